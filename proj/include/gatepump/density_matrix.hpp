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

// Multi-qubit density matrices and the operations on them, for registers of
// up to 6 qubits (64x64). Bit-order convention, fixed globally: qubit 0 is
// the MOST significant bit of a computational-basis index. All modules and
// file formats inherit this convention.

#include <initializer_list>
#include <span>
#include <vector>

#include "gatepump/gates.hpp"
#include "gatepump/types.hpp"

namespace gatepump {

class StateVector {
 public:
  // Validates squared norm within 1e-12 of 1.
  StateVector(int num_qubits, std::vector<cplx> amplitudes);

  static StateVector basis(int num_qubits, unsigned index);

  int num_qubits() const { return nq_; }
  int dim() const { return 1 << nq_; }
  const std::vector<cplx>& amps() const { return a_; }

 private:
  int nq_;
  std::vector<cplx> a_;
};

// |Phi+> = (|00> + |11>)/sqrt(2)
StateVector bell_phi();
// The Bell basis in the fixed order Phi+, Psi+, Psi-, Phi-.
const StateVector& bell_state(int k);

StateVector tensor(const StateVector& a, const StateVector& b);

class DensityMatrix {
 public:
  // Validates Hermiticity and unit trace (1e-10) and positivity (min
  // eigenvalue >= -1e-10). Use for externally supplied data; internal
  // operations construct through unchecked().
  DensityMatrix(int num_qubits, std::vector<cplx> elements);

  static DensityMatrix maximally_mixed(int num_qubits);
  // No validation; for values that are valid by construction.
  static DensityMatrix unchecked(int num_qubits, std::vector<cplx> elements);

  int num_qubits() const { return nq_; }
  int dim() const { return 1 << nq_; }
  const std::vector<cplx>& elements() const { return m_; }
  cplx at(int i, int j) const { return m_[(static_cast<std::size_t>(i) << nq_) + j]; }
  CMatrix to_matrix() const { return CMatrix(dim(), m_); }
  double trace_real() const;

  // Throws invariant_error if Hermiticity, unit trace or positivity fails.
  void check_invariants(double tol = 1e-10) const;

 private:
  DensityMatrix() = default;
  int nq_ = 0;
  std::vector<cplx> m_;
};

DensityMatrix make_pure(const StateVector& psi);

// Kronecker product; a's qubits come first in the combined register.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// U rho U^dagger with u embedded on the given target qubits (targets[0] is
// the gate's most significant qubit / control) and identity elsewhere.
DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryGate& u,
                            std::span<const int> targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryGate& u,
                            std::initializer_list<int> targets);

// Reduced state on the kept qubits, ordered as listed in keep.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

// Transpose on the chosen tensor factors. Pure entry permutation (exact
// involution); result is Hermitian but possibly not positive.
CMatrix partial_transpose(const DensityMatrix& rho, std::span<const int> transpose_set);
CMatrix partial_transpose(const DensityMatrix& rho, std::initializer_list<int> transpose_set);

// <psi| rho |psi>
double overlap(const DensityMatrix& rho, const StateVector& psi);

// All eigenvalues of a Hermitian matrix (cyclic Jacobi; off-diagonal norm
// threshold 1e-14), ascending. Rejects inputs that are not Hermitian within
// herm_tol.
std::vector<double> hermitian_eigenvalues(const CMatrix& m, double herm_tol = 1e-8);
double hermitian_min_eig(const CMatrix& m, double herm_tol = 1e-8);

}  // namespace gatepump
