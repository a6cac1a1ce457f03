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

#include "gatepump/gates.hpp"

#include <cmath>

namespace gatepump {

namespace {

void check_unitary(int dim, const std::vector<cplx>& u) {
  // U * U^dagger == identity within 1e-12
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < dim; ++k)
        acc += u[static_cast<std::size_t>(i) * dim + k] *
               std::conj(u[static_cast<std::size_t>(j) * dim + k]);
      const cplx want = i == j ? cplx(1.0) : cplx(0.0);
      if (std::abs(acc - want) > 1e-12)
        throw std::invalid_argument("UnitaryGate: matrix is not unitary");
    }
  }
}

}  // namespace

UnitaryGate::UnitaryGate(int arity, std::vector<cplx> elements) : arity_(arity), u_(std::move(elements)) {
  if (arity_ != 1 && arity_ != 2)
    throw std::invalid_argument("UnitaryGate: arity must be 1 or 2");
  const int d = dim();
  if (u_.size() != static_cast<std::size_t>(d) * d)
    throw std::invalid_argument("UnitaryGate: element count does not match arity");
  check_unitary(d, u_);
}

UnitaryGate UnitaryGate::adjoint() const {
  const int d = dim();
  std::vector<cplx> out(u_.size());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out[static_cast<std::size_t>(i) * d + j] = std::conj(u_[static_cast<std::size_t>(j) * d + i]);
  return UnitaryGate(arity_, std::move(out));
}

namespace gates {

UnitaryGate identity(int arity) {
  const int d = 1 << arity;
  std::vector<cplx> u(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) u[static_cast<std::size_t>(i) * d + i] = 1.0;
  return UnitaryGate(arity, std::move(u));
}

UnitaryGate pauli_x() { return UnitaryGate(1, {0.0, 1.0, 1.0, 0.0}); }

UnitaryGate pauli_y() {
  return UnitaryGate(1, {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0});
}

UnitaryGate pauli_z() { return UnitaryGate(1, {1.0, 0.0, 0.0, -1.0}); }

UnitaryGate hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return UnitaryGate(1, {s, s, s, -s});
}

UnitaryGate rx(double theta) {
  const double c = std::cos(theta / 2.0);
  const cplx ms(0.0, -std::sin(theta / 2.0));
  return UnitaryGate(1, {c, ms, ms, c});
}

UnitaryGate cnot() {
  return UnitaryGate(2, {1, 0, 0, 0,  //
                         0, 1, 0, 0,  //
                         0, 0, 0, 1,  //
                         0, 0, 1, 0});
}

UnitaryGate swap_gate() {
  return UnitaryGate(2, {1, 0, 0, 0,  //
                         0, 0, 1, 0,  //
                         0, 1, 0, 0,  //
                         0, 0, 0, 1});
}

UnitaryGate tensor(const UnitaryGate& a, const UnitaryGate& b) {
  if (a.arity() != 1 || b.arity() != 1)
    throw std::invalid_argument("gates::tensor: expects two single-qubit gates");
  std::vector<cplx> u(16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          u[static_cast<std::size_t>(i * 2 + k) * 4 + (j * 2 + l)] = a.at(i, j) * b.at(k, l);
  return UnitaryGate(2, std::move(u));
}

}  // namespace gates
}  // namespace gatepump
