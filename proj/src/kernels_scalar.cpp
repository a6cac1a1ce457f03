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

#include "gatepump/kernels.hpp"

#include <algorithm>

namespace gatepump::kernels {

namespace {

void apply1_scalar(cplx* a, std::size_t n, std::size_t s, const cplx* u) {
  for (std::size_t base = 0; base < n; base += 2 * s) {
    for (std::size_t i = base; i < base + s; ++i) {
      const cplx x = a[i];
      const cplx y = a[i + s];
      a[i] = u[0] * x + u[1] * y;
      a[i + s] = u[2] * x + u[3] * y;
    }
  }
}

void apply2_scalar(cplx* a, std::size_t n, std::size_t sh, std::size_t sl, const cplx* u) {
  const std::size_t s1 = std::max(sh, sl);
  const std::size_t s0 = std::min(sh, sl);
  for (std::size_t b1 = 0; b1 < n; b1 += 2 * s1) {
    for (std::size_t b0 = b1; b0 < b1 + s1; b0 += 2 * s0) {
      for (std::size_t i = b0; i < b0 + s0; ++i) {
        const cplx x0 = a[i];
        const cplx x1 = a[i + sl];
        const cplx x2 = a[i + sh];
        const cplx x3 = a[i + sh + sl];
        a[i] = u[0] * x0 + u[1] * x1 + u[2] * x2 + u[3] * x3;
        a[i + sl] = u[4] * x0 + u[5] * x1 + u[6] * x2 + u[7] * x3;
        a[i + sh] = u[8] * x0 + u[9] * x1 + u[10] * x2 + u[11] * x3;
        a[i + sh + sl] = u[12] * x0 + u[13] * x1 + u[14] * x2 + u[15] * x3;
      }
    }
  }
}

void mix_scalar(cplx* dst, const cplx* a, const cplx* b, double wa, double wb, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) dst[k] = wa * a[k] + wb * b[k];
}

cplx cdotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += std::conj(x[k]) * y[k];
  return acc;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar", &apply1_scalar, &apply2_scalar, &mix_scalar, &cdotc_scalar};
  return b;
}

}  // namespace gatepump::kernels
