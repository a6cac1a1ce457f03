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

// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; none of its vector code runs unless avx2_backend() reported
// CPU support. A __m256d holds two interleaved complex<double> values.

#include "gatepump/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <algorithm>

namespace gatepump::kernels {

namespace {

// (x0, x1) * w for a complex scalar w, two complex lanes at once.
inline __m256d cmul(__m256d x, const cplx& w) {
  const __m256d wr = _mm256_set1_pd(w.real());
  const __m256d wi = _mm256_set1_pd(w.imag());
  const __m256d xs = _mm256_permute_pd(x, 0x5);  // swap re/im in each lane pair
  return _mm256_fmaddsub_pd(x, wr, _mm256_mul_pd(xs, wi));
}

inline void apply1_pairs(cplx* px, cplx* py, const cplx* u, std::size_t count) {
  // count complex elements at each pointer, count even
  for (std::size_t k = 0; k < count; k += 2) {
    const __m256d x = _mm256_loadu_pd(reinterpret_cast<const double*>(px + k));
    const __m256d y = _mm256_loadu_pd(reinterpret_cast<const double*>(py + k));
    _mm256_storeu_pd(reinterpret_cast<double*>(px + k), _mm256_add_pd(cmul(x, u[0]), cmul(y, u[1])));
    _mm256_storeu_pd(reinterpret_cast<double*>(py + k), _mm256_add_pd(cmul(x, u[2]), cmul(y, u[3])));
  }
}

void apply1_avx2(cplx* a, std::size_t n, std::size_t s, const cplx* u) {
  if (s >= 2) {
    for (std::size_t base = 0; base < n; base += 2 * s)
      apply1_pairs(a + base, a + base + s, u, s);
    return;
  }
  // s == 1: pairs are adjacent in memory, process two pairs per iteration.
  if (n < 4) {
    const cplx x = a[0], y = a[1];
    a[0] = u[0] * x + u[1] * y;
    a[1] = u[2] * x + u[3] * y;
    return;
  }
  for (std::size_t i = 0; i < n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
    const __m256d v1 = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i + 2));
    const __m256d x = _mm256_permute2f128_pd(v0, v1, 0x20);  // (a[i], a[i+2])
    const __m256d y = _mm256_permute2f128_pd(v0, v1, 0x31);  // (a[i+1], a[i+3])
    const __m256d xo = _mm256_add_pd(cmul(x, u[0]), cmul(y, u[1]));
    const __m256d yo = _mm256_add_pd(cmul(x, u[2]), cmul(y, u[3]));
    _mm256_storeu_pd(reinterpret_cast<double*>(a + i), _mm256_permute2f128_pd(xo, yo, 0x20));
    _mm256_storeu_pd(reinterpret_cast<double*>(a + i + 2), _mm256_permute2f128_pd(xo, yo, 0x31));
  }
}

void apply2_avx2(cplx* a, std::size_t n, std::size_t sh, std::size_t sl, const cplx* u) {
  const std::size_t s1 = std::max(sh, sl);
  const std::size_t s0 = std::min(sh, sl);
  if (s0 >= 2) {
    for (std::size_t b1 = 0; b1 < n; b1 += 2 * s1) {
      for (std::size_t b0 = b1; b0 < b1 + s1; b0 += 2 * s0) {
        for (std::size_t i = b0; i < b0 + s0; i += 2) {
          const __m256d x0 = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
          const __m256d x1 = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i + sl));
          const __m256d x2 = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i + sh));
          const __m256d x3 = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i + sh + sl));
          for (int r = 0; r < 4; ++r) {
            __m256d acc = _mm256_add_pd(cmul(x0, u[r * 4 + 0]), cmul(x1, u[r * 4 + 1]));
            acc = _mm256_add_pd(acc, cmul(x2, u[r * 4 + 2]));
            acc = _mm256_add_pd(acc, cmul(x3, u[r * 4 + 3]));
            const std::size_t off = (r & 1 ? sl : 0) + (r & 2 ? sh : 0);
            _mm256_storeu_pd(reinterpret_cast<double*>(a + i + off), acc);
          }
        }
      }
    }
    return;
  }
  // Lowest stride 1: quads straddle adjacent elements; the scalar body is
  // already fast at these sizes.
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

void mix_avx2(cplx* dst, const cplx* a, const cplx* b, double wa, double wb, std::size_t n) {
  const __m256d va = _mm256_set1_pd(wa);
  const __m256d vb = _mm256_set1_pd(wb);
  const std::size_t nd = 2 * n;
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* pd = reinterpret_cast<double*>(dst);
  std::size_t k = 0;
  for (; k + 4 <= nd; k += 4) {
    const __m256d t = _mm256_mul_pd(_mm256_loadu_pd(pb + k), vb);
    _mm256_storeu_pd(pd + k, _mm256_fmadd_pd(_mm256_loadu_pd(pa + k), va, t));
  }
  for (; k < nd; ++k) pd[k] = wa * pa[k] + wb * pb[k];
}

cplx cdotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + k));
    const __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + k));
    acc_re = _mm256_fmadd_pd(vx, vy, acc_re);
    const __m256d ys = _mm256_mul_pd(_mm256_permute_pd(vy, 0x5), sign);
    acc_im = _mm256_fmadd_pd(vx, ys, acc_im);
  }
  alignas(32) double re[4], im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  cplx acc{re[0] + re[1] + re[2] + re[3], im[0] + im[1] + im[2] + im[3]};
  for (; k < n; ++k) acc += std::conj(x[k]) * y[k];
  return acc;
}

}  // namespace

const Backend* avx2_backend() {
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const Backend b{"avx2", &apply1_avx2, &apply2_avx2, &mix_avx2, &cdotc_avx2};
  return supported ? &b : nullptr;
}

}  // namespace gatepump::kernels

#else  // non-x86 build targets have no AVX2 variant

namespace gatepump::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace gatepump::kernels

#endif
