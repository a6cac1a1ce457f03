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

// Sweep driver: configuration parsing, the logical-gate-error sweeps over
// (p_single, p_two, nesting levels), threshold bisection, and CSV output.

#include <iosfwd>
#include <optional>
#include <string>

#include "gatepump/teleport.hpp"

namespace gatepump {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::vector<double> p_single_grid;
  std::vector<double> p_two_values;
  std::vector<int> levels;
  PumpConfig pump;
  double p_herald = 1.0;
  std::optional<double> eta_override;  // default policy: eta = q_local
  std::string output_path = "fig1.csv";

  // Default preset: p_single log-spaced 1e-6..1e-1 (25 points),
  // p_two in {0.15, 0.01}, levels {0,1,2,3}.
  static SweepSpec fig1_preset();

  // Throws config_error naming the offending key and constraint.
  void validate() const;
};

struct ResultRow {
  double p_single;
  double p_two;
  int levels;
  int pump_steps_total;
  double pair_fidelity;
  double logical_error_rate;
  double expected_raw_pairs;
  double expected_gate_attempts;
};

// Grid syntax: "logspace:lo,hi,n" or a comma-separated list.
std::vector<double> parse_grid_spec(const std::string& text, const std::string& key);

// Flat "key = value" lines, '#' comments, applied on top of the preset
// defaults. Unknown keys are rejected.
SweepSpec parse_config_file(const std::string& path);
// Same key/value handling for an in-memory stream (used by file parsing and
// tests).
SweepSpec parse_config_stream(std::istream& in, const std::string& origin);

// One row per (p_two, levels, p_single), sorted in that key order.
// Deterministic for a fixed spec; monte_carlo rows derive their seed as
// pump.seed + 1000003 * row_index.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

// Header comments record every effective parameter; numbers carry 12
// significant digits.
void write_csv(const SweepSpec& spec, const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> parse_csv(std::istream& in);

std::string format_double(double v);  // %.12g

enum class ThresholdKind { entangling };

// Bisection for the reliability q' where the noisy physical CNOT stops
// being entangling. A tolerance >= 1 degenerates to a single midpoint
// evaluation and returns the midpoint.
double threshold_scan(ThresholdKind kind, double tolerance);

}  // namespace gatepump
