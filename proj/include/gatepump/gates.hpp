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

#include <vector>

#include "gatepump/types.hpp"

namespace gatepump {

// One- or two-qubit unitary. For arity 2 the basis order is
// (qubit0, qubit1) with qubit0 the most significant bit; for CNOT-like gates
// the first qubit is the control.
class UnitaryGate {
 public:
  UnitaryGate(int arity, std::vector<cplx> elements);

  int arity() const { return arity_; }
  int dim() const { return 1 << arity_; }
  const std::vector<cplx>& elements() const { return u_; }
  const cplx* data() const { return u_.data(); }
  cplx at(int i, int j) const { return u_[static_cast<std::size_t>(i) * dim() + j]; }

  UnitaryGate adjoint() const;

 private:
  int arity_;
  std::vector<cplx> u_;
};

namespace gates {

UnitaryGate identity(int arity);
UnitaryGate pauli_x();
UnitaryGate pauli_y();
UnitaryGate pauli_z();
UnitaryGate hadamard();
// exp(-i*theta*X/2)
UnitaryGate rx(double theta);
UnitaryGate cnot();
UnitaryGate swap_gate();
// Kronecker product of two single-qubit gates; a acts on the first qubit.
UnitaryGate tensor(const UnitaryGate& a, const UnitaryGate& b);

}  // namespace gates
}  // namespace gatepump
