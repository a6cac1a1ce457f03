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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gatepump {

using cplx = std::complex<double>;

// Thrown when a computed state or process matrix violates one of its
// numerical invariants (Hermiticity, trace, positivity). This signals a bug
// in the simulation pipeline, never a valid result.
class invariant_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense row-major complex square matrix. Plain storage shared by density
// matrices, partial transposes and Choi matrices.
struct CMatrix {
  int dim = 0;
  std::vector<cplx> a;

  CMatrix() = default;
  explicit CMatrix(int d) : dim(d), a(static_cast<std::size_t>(d) * d) {}
  CMatrix(int d, std::vector<cplx> elems) : dim(d), a(std::move(elems)) {
    if (a.size() != static_cast<std::size_t>(dim) * dim)
      throw std::invalid_argument("CMatrix: element count does not match dimension");
  }

  cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim; ++i) t += at(i, i);
    return t;
  }

  // max_ij |a_ij - conj(a_ji)|
  double hermiticity_defect() const {
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j)
        worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
  }

  double max_abs_diff(const CMatrix& other) const {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
      worst = std::max(worst, std::abs(a[k] - other.a[k]));
    return worst;
  }
};

}  // namespace gatepump
