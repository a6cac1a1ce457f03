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

#include "gatepump/teleport.hpp"

#include <algorithm>
#include <cmath>

#include "gatepump/kernels.hpp"

namespace gatepump {

namespace {

// |Psi_U> = (1 (x) U) sum_i |ii> / 2, the normalized Choi vector of U.
std::vector<cplx> choi_vector(const UnitaryGate& u) {
  std::vector<cplx> psi(16, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) psi[static_cast<std::size_t>(i) * 4 + k] = 0.5 * u.at(k, i);
  return psi;
}

void accumulate(std::vector<cplx>& acc, const DensityMatrix& rho, double weight) {
  kernels::active().mix(acc.data(), acc.data(), rho.elements().data(), 1.0, weight, acc.size());
}

}  // namespace

void ChoiMatrix::check_invariants(double tol) const {
  if (dim_in != 4 || c.dim != 16)
    throw invariant_error("ChoiMatrix: expected a 16x16 two-qubit process matrix");
  const double herm = c.hermiticity_defect();
  if (herm > tol) throw invariant_error("ChoiMatrix: Hermiticity defect " + std::to_string(herm));
  const double tr_err = std::abs(c.trace() - cplx(4.0));
  if (tr_err > tol)
    throw invariant_error("ChoiMatrix: trace deviates from 4 by " + std::to_string(tr_err));
  const double min_eig = hermitian_min_eig(c);
  if (min_eig < -tol)
    throw invariant_error("ChoiMatrix: not completely positive, eigenvalue " +
                          std::to_string(min_eig));
  // Trace preservation: tracing the output factor must leave the identity.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += c.at(i * 4 + k, j * 4 + k);
      const cplx want = i == j ? cplx(1.0) : cplx(0.0);
      if (std::abs(acc - want) > tol)
        throw invariant_error("ChoiMatrix: output partial trace deviates from identity");
    }
}

ChoiMatrix teleported_cnot_channel(const DensityMatrix& pair, const NoiseParams& noise) {
  if (pair.num_qubits() != 2)
    throw std::invalid_argument("teleported_cnot_channel: resource pair must be a 2-qubit state");
  pair.check_invariants();
  noise.validate();
  const double q = noise.q_local;
  const double eta = noise.eta;

  // Register [R_A, A1, R_B, B1, A2, B2]; R_A/R_B are reference ancillas
  // maximally entangled with the logical inputs.
  const DensityMatrix refs = make_pure(tensor(bell_phi(), bell_phi()));
  DensityMatrix rho = tensor(refs, pair);

  rho = noisy_gate(rho, gates::cnot(), {1, 4}, q);  // (i) CNOT A1 -> A2

  const MeasurementOutcome ma = noisy_measure(rho, 4, MeasureBasis::z, eta);  // (ii)
  std::vector<cplx> acc(16 * 16, 0.0);
  for (int a = 0; a < 2; ++a) {
    if (!ma.post_states[a] || ma.probabilities[a] <= 1e-12) continue;
    // Register is now [R_A, A1, R_B, B1, B2].
    DensityMatrix branch = *ma.post_states[a];
    if (a == 1) branch = apply_unitary(branch, gates::pauli_x(), {4});
    branch = noisy_gate(branch, gates::cnot(), {4, 3}, q);  // (iii) CNOT B2 -> B1
    const MeasurementOutcome mb = noisy_measure(branch, 4, MeasureBasis::x, eta);  // (iv)
    for (int b = 0; b < 2; ++b) {
      if (!mb.post_states[b] || mb.probabilities[b] <= 1e-12) continue;
      DensityMatrix out = *mb.post_states[b];
      if (b == 1) out = apply_unitary(out, gates::pauli_z(), {1});
      accumulate(acc, out, ma.probabilities[a] * mb.probabilities[b]);
    }
  }
  // [R_A, A1, R_B, B1] -> [R_A, R_B, A1, B1] so the reference (input) pair
  // forms the leading tensor factor of the Choi matrix.
  DensityMatrix choi_state =
      apply_unitary(DensityMatrix::unchecked(4, std::move(acc)), gates::swap_gate(), {1, 2});

  ChoiMatrix out;
  out.c = CMatrix(16, choi_state.elements());
  for (cplx& v : out.c.a) v *= 4.0;
  out.check_invariants();
  return out;
}

ChoiMatrix choi_of_noisy_gate(const UnitaryGate& u, double q) {
  if (u.arity() != 2)
    throw std::invalid_argument("choi_of_noisy_gate: gate must act on two qubits");
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("choi_of_noisy_gate: q outside [0, 1]");
  const std::vector<cplx> psi = choi_vector(u);
  ChoiMatrix out;
  out.c = CMatrix(16);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j)
      out.c.at(i, j) = 4.0 * q * psi[i] * std::conj(psi[j]);
    out.c.at(i, i) += (1.0 - q) / 4.0;
  }
  return out;
}

double avg_gate_fidelity(const ChoiMatrix& choi, const UnitaryGate& target) {
  if (target.arity() != 2 || choi.c.dim != 16)
    throw std::invalid_argument("avg_gate_fidelity: dimension mismatch");
  const std::vector<cplx> psi = choi_vector(target);
  std::vector<cplx> y(16, 0.0);
  for (int i = 0; i < 16; ++i) {
    cplx row = 0.0;
    for (int j = 0; j < 16; ++j) row += choi.c.at(i, j) * psi[j];
    y[i] = row;
  }
  const double f_pro = kernels::active().cdotc(psi.data(), y.data(), 16).real() / 4.0;
  return (4.0 * f_pro + 1.0) / 5.0;
}

EntanglingResult is_entangling(const ChoiMatrix& choi, std::span<const int> transpose_side) {
  std::vector<int> side(transpose_side.begin(), transpose_side.end());
  std::sort(side.begin(), side.end());
  const bool a_side = side == std::vector<int>{0, 2};
  const bool b_side = side == std::vector<int>{1, 3};
  if (!a_side && !b_side)
    throw std::invalid_argument(
        "is_entangling: cut must group the input and output copies of one particle "
        "({0,2} or {1,3})");
  std::vector<cplx> state = choi.c.a;
  for (cplx& v : state) v *= 0.25;
  const CMatrix pt = partial_transpose(DensityMatrix::unchecked(4, std::move(state)),
                                       std::span<const int>(side));
  const double min_eig = hermitian_min_eig(pt);
  return EntanglingResult{min_eig < -1e-9, min_eig};
}

EntanglingResult is_entangling(const ChoiMatrix& choi) {
  static constexpr int kASide[2] = {0, 2};
  return is_entangling(choi, std::span<const int>(kASide, 2));
}

LogicalGateResult logical_gate_metrics(const NoiseParams& noise, const PumpConfig& config) {
  LogicalGateResult res;
  const PumpResult pump = nested_pump(noise, config);
  res.cost = pump.cost;
  res.pair_fidelity = pump.final_pair.fidelity();
  for (const FidelityTracePoint& pt : pump.fidelity_trace)
    if (pt.step > 0) ++res.pump_steps_total;

  // The consumed resource is the Werner-twirled pair of the same fidelity.
  const DensityMatrix pair = werner_of_fidelity(res.pair_fidelity);
  const ChoiMatrix choi = teleported_cnot_channel(pair, noise);
  res.metrics.avg_fidelity = avg_gate_fidelity(choi, gates::cnot());
  res.metrics.error_rate = 1.0 - res.metrics.avg_fidelity;
  const EntanglingResult ent = is_entangling(choi);
  res.metrics.entangling = ent.entangling;
  res.metrics.ppt_min_eig = ent.ppt_min_eig;
  return res;
}

}  // namespace gatepump
