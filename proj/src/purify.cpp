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

#include "gatepump/purify.hpp"

#include <cmath>
#include <random>

#include "gatepump/kernels.hpp"

namespace gatepump {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Per-level pumping schedule produced by the expected-value pipeline: the
// committed step count, each step's success probability, and the converged
// pair. Monte Carlo replays the same schedule and resamples only
// success/failure.
struct LevelSchedule {
  BellDiagonal converged;
  std::vector<double> step_probs;
};

LevelSchedule pump_schedule(const BellDiagonal& initial, const BellDiagonal& source,
                            const NoiseParams& noise, const PumpConfig& config, int level,
                            std::vector<FidelityTracePoint>* trace) {
  LevelSchedule sched{initial, {}};
  if (trace) trace->push_back({level, 0, initial.fidelity()});
  BellDiagonal cur = initial;
  for (int step = 1; step <= config.max_steps_per_level; ++step) {
    const RecurrenceOutcome r = recurrence_step(cur, source, noise);
    const double gain = r.out.fidelity() - cur.fidelity();
    if (gain > 0.0) {
      cur = r.out;
      sched.step_probs.push_back(r.p_success);
      if (trace) trace->push_back({level, step, cur.fidelity()});
    }
    if (gain < config.convergence_epsilon) break;
  }
  sched.converged = cur;
  return sched;
}

// Expected resources per converged pair of one level, in units of one
// source pair: first-step analysis of the full-restart process.
//   pairs = (sum_{i=0..m} prod_{j<i} p_j) / prod_{j=1..m} p_j
//   steps = (sum_{i=1..m} prod_{j<i} p_j) / prod_{j=1..m} p_j
struct LevelCost {
  double pairs;
  double steps;
  double success_product;
};

LevelCost level_cost(const std::vector<double>& step_probs) {
  double s = 1.0;  // i = 0 term: the initial target
  double w = 1.0;
  for (double p : step_probs) {
    s += w;
    w *= p;
  }
  return LevelCost{s / w, (s - 1.0) / w, w};
}

}  // namespace

void PumpConfig::validate() const {
  if (nesting_levels < 0 || nesting_levels > 4)
    throw std::invalid_argument("PumpConfig.nesting_levels outside [0, 4]");
  if (max_steps_per_level < 1)
    throw std::invalid_argument("PumpConfig.max_steps_per_level must be >= 1");
  if (!(convergence_epsilon > 0.0))
    throw std::invalid_argument("PumpConfig.convergence_epsilon must be > 0");
  if (mode == PumpMode::monte_carlo && num_trials < 1)
    throw std::invalid_argument("PumpConfig.num_trials must be >= 1");
}

RecurrenceOutcome recurrence_step(const BellDiagonal& target, const BellDiagonal& source,
                                  const NoiseParams& noise) {
  target.check_invariants();
  source.check_invariants();
  noise.validate();
  const double q = noise.q_local;
  const double eta = noise.eta;

  // Register [a1 b1 a2 b2]: kept pair on (0,1), source pair on (2,3).
  DensityMatrix rho = tensor(target.to_density(), source.to_density());

  // DEJMPS basis rotations, one two-subsystem operation per side.
  static const UnitaryGate rot_a =
      gates::tensor(gates::rx(M_PI / 2.0), gates::rx(M_PI / 2.0));
  static const UnitaryGate rot_b =
      gates::tensor(gates::rx(-M_PI / 2.0), gates::rx(-M_PI / 2.0));
  static const UnitaryGate cnot = gates::cnot();

  rho = noisy_gate(rho, rot_a, {0, 2}, q);
  rho = noisy_gate(rho, rot_b, {1, 3}, q);
  rho = noisy_gate(rho, cnot, {0, 2}, q);
  rho = noisy_gate(rho, cnot, {1, 3}, q);

  const MeasurementOutcome ma = noisy_measure(rho, 2, MeasureBasis::z, eta);
  double p00 = 0.0, p11 = 0.0;
  std::vector<cplx> kept(16, 0.0);
  std::optional<MeasurementOutcome> mb0, mb1;
  if (ma.post_states[0]) {
    mb0 = noisy_measure(*ma.post_states[0], 2, MeasureBasis::z, eta);
    p00 = ma.probabilities[0] * mb0->probabilities[0];
  }
  if (ma.post_states[1]) {
    mb1 = noisy_measure(*ma.post_states[1], 2, MeasureBasis::z, eta);
    p11 = ma.probabilities[1] * mb1->probabilities[1];
  }
  const double p_success = p00 + p11;
  if (p_success <= 1e-12) return RecurrenceOutcome{p_success, target};

  if (mb0 && mb0->post_states[0])
    kernels::active().mix(kept.data(), kept.data(), mb0->post_states[0]->elements().data(), 1.0,
                          p00 / p_success, kept.size());
  if (mb1 && mb1->post_states[1])
    kernels::active().mix(kept.data(), kept.data(), mb1->post_states[1]->elements().data(), 1.0,
                          p11 / p_success, kept.size());
  return RecurrenceOutcome{p_success, bell_twirl(DensityMatrix::unchecked(2, std::move(kept)))};
}

PumpResult pump_level(const BellDiagonal& initial, const BellDiagonal& source,
                      const NoiseParams& noise, const PumpConfig& config) {
  config.validate();
  PumpResult res;
  const LevelSchedule sched =
      pump_schedule(initial, source, noise, config, 1, &res.fidelity_trace);
  const LevelCost cost = level_cost(sched.step_probs);
  res.final_pair = sched.converged;
  res.cost.expected_raw_pairs = cost.pairs;
  res.cost.expected_gate_attempts = cost.pairs / noise.p_herald;
  res.cost.expected_steps_by_level = {cost.steps};
  res.cost.success_prob_by_level = sched.step_probs;
  return res;
}

PumpResult nested_pump(const NoiseParams& noise, const PumpConfig& config) {
  config.validate();
  noise.validate();

  PumpResult res;
  const RawPair raw = raw_pair(noise);
  res.fidelity_trace.push_back({0, 0, raw.state.fidelity()});

  std::vector<LevelSchedule> schedules;
  BellDiagonal cur = raw.state;
  double expected = 1.0;  // raw pairs per converged pair of the current level
  for (int level = 1; level <= config.nesting_levels; ++level) {
    LevelSchedule sched = pump_schedule(cur, cur, noise, config, level, &res.fidelity_trace);
    const LevelCost cost = level_cost(sched.step_probs);
    expected *= cost.pairs;
    res.cost.expected_steps_by_level.push_back(cost.steps);
    res.cost.success_prob_by_level.push_back(cost.success_product);
    cur = sched.converged;
    schedules.push_back(std::move(sched));
  }
  res.final_pair = cur;
  res.cost.expected_raw_pairs = expected;

  if (config.mode == PumpMode::monte_carlo) {
    // Resample the restart process; level-k steps follow the committed
    // schedule, failures restart the level from a fresh lower-level pair.
    // Trial seeds split as master seed + trial index.
    const int levels = config.nesting_levels;
    constexpr std::uint64_t kTrialBudget = 100000000;
    std::uint64_t used = 0;
    auto run_level = [&](auto&& self, int k, std::mt19937_64& rng) -> double {
      if (k == 0) {
        if (++used > kTrialBudget)
          throw std::runtime_error(
              "nested_pump: Monte Carlo trial exceeded the raw-pair budget; "
              "expected cost too large to sample");
        return 1.0;
      }
      const auto& probs = schedules[k - 1].step_probs;
      double total = self(self, k - 1, rng);
      std::size_t i = 0;
      while (i < probs.size()) {
        total += self(self, k - 1, rng);
        if (uniform01(rng) < probs[i]) {
          ++i;
        } else {
          total += self(self, k - 1, rng);
          i = 0;
        }
      }
      return total;
    };
    double sum = 0.0, sum_sq = 0.0;
    for (int trial = 0; trial < config.num_trials; ++trial) {
      std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(trial));
      const double pairs = run_level(run_level, levels, rng);
      sum += pairs;
      sum_sq += pairs * pairs;
    }
    const double n = config.num_trials;
    const double mean = sum / n;
    res.cost.expected_raw_pairs = mean;
    if (config.num_trials > 1) {
      const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
      res.cost.mc_raw_pairs_std_error = std::sqrt(var / n);
    }
  }

  res.cost.expected_gate_attempts = res.cost.expected_raw_pairs / noise.p_herald;
  return res;
}

FixedPoint recurrence_fixed_point(const NoiseParams& noise, const BellDiagonal& start) {
  noise.validate();
  const auto iterate = [&](BellDiagonal b, double stop_gain, int max_iters) {
    double f = b.fidelity();
    for (int i = 0; i < max_iters; ++i) {
      const RecurrenceOutcome r = recurrence_step(b, b, noise);
      const double fn = r.out.fidelity();
      if (std::abs(fn - f) < stop_gain) return fn;
      b = r.out;
      f = fn;
    }
    return f;
  };

  FixedPoint fp{};
  fp.f_max = iterate(start, 1e-12, 10000);

  // Bisection over Werner inputs for the smallest fidelity that still
  // converges up to f_max. The repelling fixed point separates the basins,
  // so classify by which attractor the iteration approaches.
  const auto converges_up = [&](double f0) {
    BellDiagonal b = bell_twirl(werner_of_fidelity(f0));
    const double midpoint = 0.5 * (0.25 + fp.f_max);
    double f = f0;
    for (int i = 0; i < 5000; ++i) {
      if (std::abs(f - fp.f_max) < 1e-6) return true;
      const RecurrenceOutcome r = recurrence_step(b, b, noise);
      const double fn = r.out.fidelity();
      if (std::abs(fn - f) < 1e-13) break;
      b = r.out;
      f = fn;
    }
    return f > midpoint;
  };

  double lo = 0.26, hi = std::min(0.999, fp.f_max - 1e-9);
  if (!(hi > lo) || !converges_up(hi) || converges_up(lo)) {
    fp.f_min = std::numeric_limits<double>::quiet_NaN();
    return fp;
  }
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (converges_up(mid) ? hi : lo) = mid;
  }
  fp.f_min = 0.5 * (lo + hi);
  return fp;
}

}  // namespace gatepump
