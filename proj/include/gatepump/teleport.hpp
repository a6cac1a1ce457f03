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

// Consuming a purified pair to realize a teleported CNOT on the logical
// qubits, the channel's Choi matrix, average gate fidelity, and the PPT
// entangling test for noisy physical gates.

#include "gatepump/purify.hpp"

namespace gatepump {

// Process matrix of a two-qubit channel, C = sum_ij |i><j| (x) E(|i><j|),
// so tr C = 4. The first tensor factor carries the input indices.
struct ChoiMatrix {
  int dim_in = 4;
  CMatrix c;  // 16x16

  // Hermiticity/positivity (complete positivity), output partial trace =
  // identity (trace preservation), tr = 4. Throws invariant_error.
  void check_invariants(double tol = 1e-9) const;
};

struct GateMetrics {
  double avg_fidelity = 1.0;
  double error_rate = 0.0;  // 1 - avg_fidelity
  bool entangling = true;
  double ppt_min_eig = 0.0;
};

// Teleported CNOT consuming the given two-qubit resource pair: CNOT
// A1->A2, Z measurement of A2 (conditional X on B2), CNOT B2->B1, X
// measurement of B2 (conditional Z on A1). Two-subsystem gates go through
// the noisy channel (q_local), measurements through the noisy POVM (eta);
// the conditional Pauli corrections are classical frame updates and noise
// free. Both outcomes of both measurements are averaged with their
// probabilities, yielding a deterministic channel; input ordering is
// (A1, B1) with A1 the control.
ChoiMatrix teleported_cnot_channel(const DensityMatrix& pair, const NoiseParams& noise);

// Choi matrix of rho -> q U rho U^dagger + (1-q)/4 tr(rho) * identity.
ChoiMatrix choi_of_noisy_gate(const UnitaryGate& u, double q);

// Average gate fidelity (d F_pro + 1)/(d + 1) with d = 4 and process
// fidelity F_pro = <Psi_U| C/4 |Psi_U>.
double avg_gate_fidelity(const ChoiMatrix& choi, const UnitaryGate& target);

struct EntanglingResult {
  bool entangling;
  double ppt_min_eig;
};

// PPT criterion on the normalized Choi state C/4, viewed as 4 qubits
// (input A, input B, output A, output B). transpose_side selects the
// qubits of one particle, {0, 2} (A side, default) or {1, 3}. Entangling
// iff the partial transpose has an eigenvalue below -1e-9.
EntanglingResult is_entangling(const ChoiMatrix& choi,
                               std::span<const int> transpose_side);
EntanglingResult is_entangling(const ChoiMatrix& choi);

struct LogicalGateResult {
  GateMetrics metrics;
  CostReport cost;
  double pair_fidelity = 1.0;
  int pump_steps_total = 0;
};

// Full pipeline: nested pumping, Werner twirl of the final pair, teleported
// CNOT, gate metrics plus the pump cost.
LogicalGateResult logical_gate_metrics(const NoiseParams& noise, const PumpConfig& config);

}  // namespace gatepump
