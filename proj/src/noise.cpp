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

#include "gatepump/noise.hpp"

#include <cmath>

#include "gatepump/kernels.hpp"

namespace gatepump {

namespace {

void check_unit_range(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

// (M + M^dagger)/2 and trace renormalization; bounds floating-point drift
// over long pumping sequences.
void hygiene(std::vector<cplx>& m, int dim) {
  double tr = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      const cplx v = 0.5 * (m[static_cast<std::size_t>(i) * dim + j] +
                            std::conj(m[static_cast<std::size_t>(j) * dim + i]));
      m[static_cast<std::size_t>(i) * dim + j] = v;
      m[static_cast<std::size_t>(j) * dim + i] = std::conj(v);
    }
    m[static_cast<std::size_t>(i) * dim + i] = m[static_cast<std::size_t>(i) * dim + i].real();
    tr += m[static_cast<std::size_t>(i) * dim + i].real();
  }
  if (tr > 0.0 && std::abs(tr - 1.0) > 1e-15)
    for (cplx& c : m) c /= tr;
}

// (identity/4 on targets) (x) tr_targets(rho), register layout preserved.
std::vector<cplx> depolarized_branch(const DensityMatrix& rho, int t0, int t1) {
  const int n = rho.num_qubits();
  const int d = rho.dim();
  std::vector<cplx> out(static_cast<std::size_t>(d) * d, 0.0);
  if (n == 2) {
    for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i) * 4 + i] = 0.25;
    return out;
  }
  std::vector<int> keep;
  for (int q = 0; q < n; ++q)
    if (q != t0 && q != t1) keep.push_back(q);
  const DensityMatrix sigma = partial_trace(rho, std::span<const int>(keep));

  const int nk = n - 2;
  const int dk = 1 << nk;
  std::vector<unsigned> scatter(dk, 0);
  for (int idx = 0; idx < dk; ++idx)
    for (int p = 0; p < nk; ++p)
      if (idx & (1 << (nk - 1 - p))) scatter[idx] |= 1u << (n - 1 - keep[p]);
  const unsigned w0 = 1u << (n - 1 - t0);
  const unsigned w1 = 1u << (n - 1 - t1);
  const unsigned tbits[4] = {0, w1, w0, w0 | w1};

  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      const cplx v = 0.25 * sigma.at(i, j);
      for (unsigned tb : tbits)
        out[(static_cast<std::size_t>(scatter[i] | tb) << n) + (scatter[j] | tb)] = v;
    }
  return out;
}

}  // namespace

void NoiseParams::validate() const {
  check_unit_range(q_local, "NoiseParams.q_local");
  check_unit_range(eta, "NoiseParams.eta");
  check_unit_range(q_two, "NoiseParams.q_two");
  if (!(p_herald > 0.0 && p_herald <= 1.0))
    throw std::invalid_argument("NoiseParams.p_herald must lie in (0, 1]");
}

double NoiseParams::p_local() const { return error_rate_from_q(q_local, 4); }
double NoiseParams::p_two() const { return error_rate_from_q(q_two, 4); }

NoiseParams NoiseParams::from_error_rates(double p_single, double p_two,
                                          std::optional<double> eta_override, double p_herald) {
  NoiseParams np;
  np.q_local = q_from_error_rate(p_single, 4);
  np.q_two = q_from_error_rate(p_two, 4);
  np.eta = eta_override.value_or(np.q_local);
  np.p_herald = p_herald;
  np.validate();
  return np;
}

DensityMatrix BellDiagonal::to_density() const {
  std::vector<cplx> m(16, 0.0);
  for (int k = 0; k < 4; ++k) {
    const auto& amps = bell_state(k).amps();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        m[static_cast<std::size_t>(i) * 4 + j] += lambda[k] * amps[i] * std::conj(amps[j]);
  }
  return DensityMatrix::unchecked(2, std::move(m));
}

void BellDiagonal::check_invariants(double tol) const {
  double sum = 0.0;
  for (double l : lambda) {
    if (l < -1e-12)
      throw invariant_error("BellDiagonal: negative coefficient " + std::to_string(l));
    sum += l;
  }
  if (std::abs(sum - 1.0) > tol)
    throw invariant_error("BellDiagonal: coefficients sum to " + std::to_string(sum));
}

DensityMatrix noisy_gate(const DensityMatrix& rho, const UnitaryGate& u,
                         std::span<const int> targets, double q) {
  if (u.arity() != 2) throw std::invalid_argument("noisy_gate: gate must act on two qubits");
  check_unit_range(q, "noisy_gate: q");
  const DensityMatrix rotated = apply_unitary(rho, u, targets);  // validates targets
  std::vector<cplx> mixed = depolarized_branch(rho, targets[0], targets[1]);
  std::vector<cplx> out(mixed.size());
  kernels::active().mix(out.data(), rotated.elements().data(), mixed.data(), q, 1.0 - q,
                        out.size());
  hygiene(out, rho.dim());
  return DensityMatrix::unchecked(rho.num_qubits(), std::move(out));
}

DensityMatrix noisy_gate(const DensityMatrix& rho, const UnitaryGate& u,
                         std::initializer_list<int> targets, double q) {
  return noisy_gate(rho, u, std::span<const int>(targets.begin(), targets.size()), q);
}

MeasurementOutcome noisy_measure(const DensityMatrix& rho, int target, MeasureBasis basis,
                                 double eta) {
  const int n = rho.num_qubits();
  if (target < 0 || target >= n)
    throw std::invalid_argument("noisy_measure: target index out of range");
  check_unit_range(eta, "noisy_measure: eta");

  // X-basis measurement is the Z procedure in the Hadamard-rotated frame;
  // the rotation acts only on the qubit that is traced out afterwards.
  const DensityMatrix work =
      basis == MeasureBasis::x ? apply_unitary(rho, gates::hadamard(), {target}) : rho;

  const int d = rho.dim();
  const unsigned w = 1u << (n - 1 - target);
  // Ideal projection remainders P_k rho P_k (unnormalized, disjoint supports).
  std::vector<cplx> m0(static_cast<std::size_t>(d) * d, 0.0), m1 = m0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const bool bi = i & w, bj = j & w;
      if (!bi && !bj)
        m0[static_cast<std::size_t>(i) * d + j] = work.at(i, j);
      else if (bi && bj)
        m1[static_cast<std::size_t>(i) * d + j] = work.at(i, j);
    }

  std::vector<int> keep;
  for (int q = 0; q < n; ++q)
    if (q != target) keep.push_back(q);

  MeasurementOutcome out{{0.0, 0.0}, {std::nullopt, std::nullopt}};
  for (int k = 0; k < 2; ++k) {
    std::vector<cplx> u(m0.size());
    const double wa = k == 0 ? eta : 1.0 - eta;
    kernels::active().mix(u.data(), m0.data(), m1.data(), wa, 1.0 - wa, u.size());
    double p = 0.0;
    for (int i = 0; i < d; ++i) p += u[static_cast<std::size_t>(i) * d + i].real();
    out.probabilities[k] = p;
    if (p > 1e-12 && n > 1) {
      for (cplx& c : u) c /= p;
      DensityMatrix post =
          partial_trace(DensityMatrix::unchecked(n, std::move(u)), std::span<const int>(keep));
      std::vector<cplx> pm = post.elements();
      hygiene(pm, post.dim());
      out.post_states[k] = DensityMatrix::unchecked(n - 1, std::move(pm));
    }
  }
  return out;
}

DensityMatrix werner(double x) {
  if (!(x >= -1.0 / 3.0 - 1e-12 && x <= 1.0 + 1e-12))
    throw std::invalid_argument("werner: x outside [-1/3, 1]");
  std::vector<cplx> m(16, 0.0);
  const auto& phi = bell_state(0).amps();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j)
      m[static_cast<std::size_t>(i) * 4 + j] = x * phi[i] * std::conj(phi[j]);
    m[static_cast<std::size_t>(i) * 4 + i] += (1.0 - x) / 4.0;
  }
  return DensityMatrix::unchecked(2, std::move(m));
}

DensityMatrix werner_of_fidelity(double fidelity) { return werner((4.0 * fidelity - 1.0) / 3.0); }

BellDiagonal bell_twirl(const DensityMatrix& rho) {
  if (rho.num_qubits() != 2)
    throw std::invalid_argument("bell_twirl: expects a two-qubit state");
  BellDiagonal out;
  for (int k = 0; k < 4; ++k) out.lambda[k] = overlap(rho, bell_state(k));
  return out;
}

RawPair raw_pair(const NoiseParams& noise) {
  noise.validate();
  const double s = 1.0 / std::sqrt(2.0);
  const StateVector plus_zero(2, {s, 0.0, s, 0.0});  // |+>|0>
  const DensityMatrix rho = noisy_gate(make_pure(plus_zero), gates::cnot(), {0, 1}, noise.q_two);
  return RawPair{bell_twirl(rho), true, 1.0 / noise.p_herald};
}

double q_from_error_rate(double p, int d) {
  if (d < 2) throw std::invalid_argument("q_from_error_rate: dimension must be >= 2");
  const double pmax = static_cast<double>(d - 1) / d;
  if (!(p >= 0.0 && p <= pmax + 1e-12))
    throw std::invalid_argument("q_from_error_rate: p outside [0, (d-1)/d]");
  return 1.0 - p * d / (d - 1.0);
}

double error_rate_from_q(double q, int d) {
  if (d < 2) throw std::invalid_argument("error_rate_from_q: dimension must be >= 2");
  check_unit_range(q, "error_rate_from_q: q");
  return (1.0 - q) * (d - 1.0) / d;
}

}  // namespace gatepump
