// Copyright 2026 The gatepump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Data-parallel inner loops of the simulator: gate application on amplitude
// arrays, elementwise channel mixing, and conjugated dot products. A scalar
// reference implementation always exists; SIMD variants (AVX2+FMA) are
// selected at runtime and must agree with the reference (equivalence-tested).
//
// Amplitude arrays hold interleaved std::complex<double>. Array length n and
// all strides are powers of two. No validation happens here; callers pass
// consistent arguments.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace gatepump::kernels {

using cplx = std::complex<double>;

// In-place 2x2 gate u (row-major) on every amplitude pair (i, i|stride)
// where i has the stride bit clear.
using Apply1Fn = void (*)(cplx* amps, std::size_t n, std::size_t stride, const cplx* u);

// In-place 4x4 gate u (row-major) on every quad
// (i, i|s_lo, i|s_hi, i|s_hi|s_lo) where i has both stride bits clear.
// s_hi is the stride of the gate's most significant qubit; s_hi != s_lo but
// no ordering between them is assumed.
using Apply2Fn = void (*)(cplx* amps, std::size_t n, std::size_t s_hi, std::size_t s_lo,
                          const cplx* u);

// dst[k] = wa*a[k] + wb*b[k] for real weights. dst may alias a or b.
using MixFn = void (*)(cplx* dst, const cplx* a, const cplx* b, double wa, double wb,
                       std::size_t n);

// sum_k conj(x[k]) * y[k]
using CdotcFn = cplx (*)(const cplx* x, const cplx* y, std::size_t n);

struct Backend {
  const char* name;
  Apply1Fn apply1;
  Apply2Fn apply2;
  MixFn mix;
  CdotcFn cdotc;
};

// The always-available reference backend.
const Backend& scalar_backend();

// AVX2+FMA backend, or nullptr when the build target or the running CPU
// does not support it.
const Backend* avx2_backend();

// Currently selected backend. Defaults to the best available one; the
// GATEPUMP_KERNELS environment variable ("scalar", "avx2", "auto")
// overrides the default at first use.
const Backend& active();

// Select by name ("scalar", "avx2", "auto"). Returns false and leaves the
// selection unchanged if the named backend is unavailable.
bool select_backend(std::string_view name);

// All backends usable on this machine, reference first.
std::vector<const Backend*> available_backends();

}  // namespace gatepump::kernels
