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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gatepump/kernels.hpp"
#include "gatepump/sweep.hpp"

namespace {

// Exit codes: 0 success, 1 configuration error, 2 numerical invariant
// violation or other runtime failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInvariant = 2;

int run_sweep_command(const gatepump::SweepSpec& spec) {
  const std::vector<gatepump::ResultRow> rows = gatepump::run_sweep(spec);
  std::ofstream out(spec.output_path);
  if (!out) {
    std::cerr << "error: cannot open output file '" << spec.output_path << "'\n";
    return kExitConfig;
  }
  gatepump::write_csv(spec, rows, out);
  std::cout << "wrote " << rows.size() << " rows to " << spec.output_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator for entanglement-pumping-assisted teleported CNOT gates"};
  app.require_subcommand(1);

  std::string config_path, p_single_spec, p_two_spec, levels_spec, mode_spec, out_path;
  std::string kernels_name;
  long trials = -1, seed = -1, max_steps = -1;
  double eta = -1.0, p_herald = -1.0, epsilon = -1.0, tolerance = 1e-6;

  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep and write a CSV file");
  sweep->add_option("--config", config_path, "flat key=value config file; flags override it");
  sweep->add_option("--p-single", p_single_spec,
                    "single-particle error rates: list or logspace:lo,hi,n");
  sweep->add_option("--p-two", p_two_spec, "two-particle error rates: list");
  sweep->add_option("--levels", levels_spec, "nesting levels: list of integers in [0,4]");
  sweep->add_option("--mode", mode_spec, "expected|mc");
  sweep->add_option("--trials", trials, "Monte Carlo trials per row");
  sweep->add_option("--seed", seed, "Monte Carlo master seed");
  sweep->add_option("--out", out_path, "output CSV path");
  sweep->add_option("--eta", eta, "measurement reliability override (default: eta = q_local)");
  sweep->add_option("--p-herald", p_herald, "herald success probability of the physical gate");
  sweep->add_option("--epsilon", epsilon, "per-level convergence threshold on fidelity gain");
  sweep->add_option("--max-steps", max_steps, "maximum pump steps per nesting level");
  sweep->add_option("--kernels", kernels_name, "kernel backend: scalar|avx2|auto");

  CLI::App* threshold =
      app.add_subcommand("threshold", "locate the entangling threshold of the noisy physical gate");
  threshold->add_option("--tolerance", tolerance, "bisection tolerance on q'")->capture_default_str();

  CLI::App* fig1 = app.add_subcommand("fig1", "preset sweep over the standard grid");
  fig1->add_option("--out", out_path, "output CSV path");
  fig1->add_option("--kernels", kernels_name, "kernel backend: scalar|avx2|auto");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (!kernels_name.empty() && !gatepump::kernels::select_backend(kernels_name)) {
      std::cerr << "error: kernel backend '" << kernels_name << "' is not available\n";
      return kExitConfig;
    }

    if (threshold->parsed()) {
      const double q = gatepump::threshold_scan(gatepump::ThresholdKind::entangling, tolerance);
      std::cout << "q_two_threshold=" << gatepump::format_double(q) << "\n";
      std::cout << "p_two_threshold=" << gatepump::format_double(gatepump::error_rate_from_q(q, 4))
                << "\n";
      return kExitOk;
    }

    gatepump::SweepSpec spec = config_path.empty() ? gatepump::SweepSpec::fig1_preset()
                                                   : gatepump::parse_config_file(config_path);
    if (sweep->parsed()) {
      if (!p_single_spec.empty())
        spec.p_single_grid = gatepump::parse_grid_spec(p_single_spec, "p_single");
      if (!p_two_spec.empty()) spec.p_two_values = gatepump::parse_grid_spec(p_two_spec, "p_two");
      if (!levels_spec.empty()) {
        spec.levels.clear();
        for (double v : gatepump::parse_grid_spec(levels_spec, "levels"))
          spec.levels.push_back(static_cast<int>(v));
      }
      if (!mode_spec.empty()) {
        if (mode_spec == "expected")
          spec.pump.mode = gatepump::PumpMode::expected_value;
        else if (mode_spec == "mc")
          spec.pump.mode = gatepump::PumpMode::monte_carlo;
        else
          throw gatepump::config_error("mode: '" + mode_spec + "' is not one of expected|mc");
      }
      if (trials >= 0) spec.pump.num_trials = static_cast<int>(trials);
      if (seed >= 0) spec.pump.seed = static_cast<std::uint64_t>(seed);
      if (max_steps >= 0) spec.pump.max_steps_per_level = static_cast<int>(max_steps);
      if (epsilon >= 0.0) spec.pump.convergence_epsilon = epsilon;
      if (eta >= 0.0) spec.eta_override = eta;
      if (p_herald >= 0.0) spec.p_herald = p_herald;
    }
    if (!out_path.empty()) spec.output_path = out_path;
    return run_sweep_command(spec);
  } catch (const gatepump::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const gatepump::invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
}
