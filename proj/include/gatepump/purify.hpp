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

// Entanglement purification: one noisy recurrence (DEJMPS) step, pumping to
// convergence at one level, the nested pumping scheme, and expected-cost
// accounting with restart-on-failure semantics.

#include <cstdint>
#include <vector>

#include "gatepump/noise.hpp"

namespace gatepump {

enum class PumpMode { expected_value, monte_carlo };

struct PumpConfig {
  int nesting_levels = 3;            // L in [0, 4]
  int max_steps_per_level = 20;
  double convergence_epsilon = 1e-4; // stop a level when fidelity gain per step < epsilon
  PumpMode mode = PumpMode::expected_value;
  std::uint64_t seed = 0;            // monte_carlo only
  int num_trials = 100000;           // monte_carlo only

  void validate() const;
};

struct CostReport {
  double expected_raw_pairs = 1.0;
  double expected_gate_attempts = 1.0;
  // Expected recurrence-step executions (restarts included) per converged
  // pair of each level.
  std::vector<double> expected_steps_by_level;
  // From pump_level: the per-step success probabilities of that single
  // level. From nested_pump: one entry per level, the product of the
  // level's per-step success probabilities.
  std::vector<double> success_prob_by_level;
  // Standard error of expected_raw_pairs in monte_carlo mode; 0 otherwise.
  double mc_raw_pairs_std_error = 0.0;
};

struct FidelityTracePoint {
  int level;
  int step;  // 0 is the level's initial pair
  double fidelity;
};

struct PumpResult {
  BellDiagonal final_pair;
  CostReport cost;
  std::vector<FidelityTracePoint> fidelity_trace;
};

struct RecurrenceOutcome {
  double p_success;
  BellDiagonal out;
};

// One DEJMPS step, simulated on the full 4-qubit density matrix: local
// basis rotations and bilateral CNOTs through the noisy gate channel
// (q_local), Z measurements of the source pair through the noisy POVM
// (eta), post-selection on coincident outcomes, Bell twirl of the kept
// pair. The kept pair is the CNOT control side; the source pair is the
// CNOT target side and is measured.
RecurrenceOutcome recurrence_step(const BellDiagonal& target, const BellDiagonal& source,
                                  const NoiseParams& noise);

// Pump one stored pair with a fixed source state until the fidelity gain
// per step drops below config.convergence_epsilon or max_steps_per_level is
// reached. A step that would lower fidelity is rolled back and ends the
// level, so the trace is strictly increasing. Costs are reported in units
// of one source pair (restart recursion, see nested_pump).
PumpResult pump_level(const BellDiagonal& initial, const BellDiagonal& source,
                      const NoiseParams& noise, const PumpConfig& config);

// Nested pumping: level 0 is the raw pair; level k pumps a converged
// level-(k-1) pair with fresh level-(k-1) pairs. Expected costs follow the
// full-restart recursion
//   E_k = E_{k-1} * (sum_{i=0..m} prod_{j<i} p_j) / prod_{j=1..m} p_j ,
// validated against monte_carlo mode, which resamples only step
// success/failure (the conditional states are deterministic).
PumpResult nested_pump(const NoiseParams& noise, const PumpConfig& config);

struct FixedPoint {
  double f_max;  // fidelity reached by iterating the symmetric map from `start`
  double f_min;  // minimal Werner input fidelity that still converges up (NaN if none found)
};

// Symmetric recurrence iteration (both inputs equal, updated each round):
// the reachable fidelity of the recurrence method, plus the minimal input
// fidelity located by bisection to 1e-6.
FixedPoint recurrence_fixed_point(const NoiseParams& noise, const BellDiagonal& start);

}  // namespace gatepump
