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

// Error models: the depolarizing two-subsystem gate channel, the unsharp
// POVM measurement, Werner states, Bell twirling, raw pair generation by
// the noisy physical two-particle gate, and reliability/error-rate
// conversions p = (1-q)(d-1)/d.

#include <array>
#include <optional>

#include "gatepump/density_matrix.hpp"

namespace gatepump {

struct NoiseParams {
  double q_local = 1.0;   // reliability of single-particle two-subsystem gates
  double eta = 1.0;       // measurement reliability
  double q_two = 1.0;     // reliability of the physical two-particle gate
  double p_herald = 1.0;  // success probability of the heralded physical gate

  void validate() const;
  double p_local() const;
  double p_two() const;

  // eta defaults to q_local unless overridden.
  static NoiseParams from_error_rates(double p_single, double p_two,
                                      std::optional<double> eta_override = std::nullopt,
                                      double p_herald = 1.0);
};

// Coefficients over the Bell projectors in the fixed order
// Phi+, Psi+, Psi-, Phi-. Fidelity with |Phi+> is lambda[0].
struct BellDiagonal {
  std::array<double, 4> lambda{1.0, 0.0, 0.0, 0.0};

  double fidelity() const { return lambda[0]; }
  DensityMatrix to_density() const;
  void check_invariants(double tol = 1e-10) const;
};

enum class MeasureBasis { z, x };

struct MeasurementOutcome {
  std::array<double, 2> probabilities;
  // Post-measurement states with the measured qubit removed from the
  // register; nullopt when no qubits remain or the outcome probability is
  // below 1e-12.
  std::array<std::optional<DensityMatrix>, 2> post_states;
};

// q * U rho U^dagger + (1-q) * (identity/4 on targets) (x) tr_targets(rho).
// u must be a two-qubit gate.
DensityMatrix noisy_gate(const DensityMatrix& rho, const UnitaryGate& u,
                         std::span<const int> targets, double q);
DensityMatrix noisy_gate(const DensityMatrix& rho, const UnitaryGate& u,
                         std::initializer_list<int> targets, double q);

// POVM with elements eta*P_k + (1-eta)*P_{1-k} for the ideal projectors of
// the chosen basis. Outcome 0 means |0> (z) or |+> (x).
MeasurementOutcome noisy_measure(const DensityMatrix& rho, int target, MeasureBasis basis,
                                 double eta);

// x|Phi+><Phi+| + (1-x)/4 * identity; positive for x in [-1/3, 1].
DensityMatrix werner(double x);
// Werner state of the given fidelity F = x + (1-x)/4.
DensityMatrix werner_of_fidelity(double fidelity);

// Exact Bell diagonalization: keeps <Bell_k|rho|Bell_k>, drops off-diagonal
// Bell-basis elements. Preserves the fidelity lambda[0] exactly.
BellDiagonal bell_twirl(const DensityMatrix& rho);

struct RawPair {
  BellDiagonal state;
  bool herald = true;  // generation is heralded; cost accounting uses attempts_expected
  double attempts_expected = 1.0;
};

// One elementary pair: noisy CNOT (reliability q_two) on |+>|0>, twirled.
RawPair raw_pair(const NoiseParams& noise);

double q_from_error_rate(double p, int d);
double error_rate_from_q(double q, int d);

}  // namespace gatepump
