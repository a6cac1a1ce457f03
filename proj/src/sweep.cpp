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

#include "gatepump/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gatepump/kernels.hpp"

namespace gatepump {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw config_error(key + ": '" + text + "' is not a number");
  }
}

long parse_integer(const std::string& text, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw config_error(key + ": '" + text + "' is not an integer");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

void check_error_rate_list(const std::vector<double>& v, const std::string& key) {
  if (v.empty()) throw config_error(key + ": grid must be nonempty");
  for (double p : v)
    if (!(p > 0.0 && p <= 0.75))
      throw config_error(key + ": value " + format_double(p) +
                         " outside (0, 3/4] (p = 3(1-q)/4 bound)");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<double> parse_grid_spec(const std::string& text, const std::string& key) {
  std::vector<double> out;
  if (text.rfind("logspace:", 0) == 0) {
    const auto parts = split(text.substr(9), ',');
    if (parts.size() != 3) throw config_error(key + ": logspace expects lo,hi,n");
    const double lo = parse_number(parts[0], key);
    const double hi = parse_number(parts[1], key);
    const long n = parse_integer(parts[2], key);
    if (!(lo > 0.0) || !(hi > 0.0)) throw config_error(key + ": logspace bounds must be > 0");
    if (n < 1) throw config_error(key + ": logspace point count must be >= 1");
    if (n == 1) return {lo};
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (long i = 0; i < n; ++i)
      out.push_back(std::pow(10.0, llo + (lhi - llo) * static_cast<double>(i) / (n - 1)));
    return out;
  }
  for (const std::string& item : split(text, ','))
    if (!item.empty()) out.push_back(parse_number(item, key));
  if (out.empty()) throw config_error(key + ": empty value list");
  return out;
}

SweepSpec SweepSpec::fig1_preset() {
  SweepSpec spec;
  spec.p_single_grid = parse_grid_spec("logspace:1e-6,1e-1,25", "p_single");
  spec.p_two_values = {0.15, 0.01};
  spec.levels = {0, 1, 2, 3};
  return spec;
}

void SweepSpec::validate() const {
  check_error_rate_list(p_single_grid, "p_single");
  check_error_rate_list(p_two_values, "p_two");
  if (levels.empty()) throw config_error("levels: list must be nonempty");
  for (int l : levels)
    if (l < 0 || l > 4)
      throw config_error("levels: value " + std::to_string(l) + " outside [0, 4]");
  if (eta_override && !(*eta_override >= 0.0 && *eta_override <= 1.0))
    throw config_error("eta: override outside [0, 1]");
  if (!(p_herald > 0.0 && p_herald <= 1.0))
    throw config_error("p_herald: value outside (0, 1]");
  if (output_path.empty()) throw config_error("out: output path must be nonempty");
  try {
    pump.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
}

SweepSpec parse_config_stream(std::istream& in, const std::string& origin) {
  SweepSpec spec = SweepSpec::fig1_preset();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "p_single") {
      spec.p_single_grid = parse_grid_spec(value, "p_single");
    } else if (key == "p_two") {
      spec.p_two_values = parse_grid_spec(value, "p_two");
    } else if (key == "levels") {
      spec.levels.clear();
      for (const std::string& item : split(value, ','))
        spec.levels.push_back(static_cast<int>(parse_integer(item, "levels")));
    } else if (key == "mode") {
      if (value == "expected" || value == "expected_value")
        spec.pump.mode = PumpMode::expected_value;
      else if (value == "mc" || value == "monte_carlo")
        spec.pump.mode = PumpMode::monte_carlo;
      else
        throw config_error("mode: '" + value + "' is not one of expected|mc");
    } else if (key == "trials") {
      spec.pump.num_trials = static_cast<int>(parse_integer(value, "trials"));
    } else if (key == "seed") {
      spec.pump.seed = static_cast<std::uint64_t>(parse_integer(value, "seed"));
    } else if (key == "epsilon") {
      spec.pump.convergence_epsilon = parse_number(value, "epsilon");
    } else if (key == "max_steps") {
      spec.pump.max_steps_per_level = static_cast<int>(parse_integer(value, "max_steps"));
    } else if (key == "eta") {
      spec.eta_override = parse_number(value, "eta");
    } else if (key == "p_herald") {
      spec.p_herald = parse_number(value, "p_herald");
    } else if (key == "out") {
      spec.output_path = value;
    } else {
      throw config_error(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return spec;
}

SweepSpec parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open '" + path + "'");
  return parse_config_stream(in, path);
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<double> p_two_sorted = spec.p_two_values;
  std::vector<int> levels_sorted = spec.levels;
  std::vector<double> p_single_sorted = spec.p_single_grid;
  std::sort(p_two_sorted.begin(), p_two_sorted.end());
  std::sort(levels_sorted.begin(), levels_sorted.end());
  std::sort(p_single_sorted.begin(), p_single_sorted.end());

  std::vector<ResultRow> rows;
  std::size_t row_index = 0;
  for (double p_two : p_two_sorted) {
    for (int level : levels_sorted) {
      for (double p_single : p_single_sorted) {
        const NoiseParams noise =
            NoiseParams::from_error_rates(p_single, p_two, spec.eta_override, spec.p_herald);
        PumpConfig cfg = spec.pump;
        cfg.nesting_levels = level;
        cfg.seed = spec.pump.seed + 1000003ull * row_index;
        const LogicalGateResult r = logical_gate_metrics(noise, cfg);
        ResultRow row{p_single,
                      p_two,
                      level,
                      r.pump_steps_total,
                      r.pair_fidelity,
                      r.metrics.error_rate,
                      r.cost.expected_raw_pairs,
                      r.cost.expected_gate_attempts};
        if (!(row.logical_error_rate >= 0.0 && row.logical_error_rate <= 1.0) ||
            !(row.pair_fidelity >= 0.0 && row.pair_fidelity <= 1.0) ||
            !(row.expected_raw_pairs >= 1.0) || !std::isfinite(row.expected_raw_pairs))
          throw invariant_error("run_sweep: result row violates its bounds at p_single=" +
                                format_double(p_single) + " p_two=" + format_double(p_two) +
                                " levels=" + std::to_string(level));
        rows.push_back(row);
        ++row_index;
      }
    }
  }
  return rows;
}

void write_csv(const SweepSpec& spec, const std::vector<ResultRow>& rows, std::ostream& out) {
  const auto join_doubles = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += format_double(v[i]);
    }
    return s;
  };
  std::string levels_s;
  {
    std::vector<int> levels_sorted = spec.levels;
    std::sort(levels_sorted.begin(), levels_sorted.end());
    for (std::size_t i = 0; i < levels_sorted.size(); ++i) {
      if (i) levels_s += ',';
      levels_s += std::to_string(levels_sorted[i]);
    }
  }
  std::vector<double> p_single_sorted = spec.p_single_grid;
  std::vector<double> p_two_sorted = spec.p_two_values;
  std::sort(p_single_sorted.begin(), p_single_sorted.end());
  std::sort(p_two_sorted.begin(), p_two_sorted.end());

  out << "# gatepump sweep\n";
  out << "# p_single=" << join_doubles(p_single_sorted) << "\n";
  out << "# p_two=" << join_doubles(p_two_sorted) << "\n";
  out << "# levels=" << levels_s << "\n";
  out << "# mode=" << (spec.pump.mode == PumpMode::expected_value ? "expected_value" : "monte_carlo")
      << "\n";
  out << "# epsilon=" << format_double(spec.pump.convergence_epsilon) << "\n";
  out << "# max_steps=" << spec.pump.max_steps_per_level << "\n";
  out << "# eta=" << (spec.eta_override ? format_double(*spec.eta_override)
                                        : std::string("policy:q_local"))
      << "\n";
  out << "# p_herald=" << format_double(spec.p_herald) << "\n";
  out << "# seed=" << spec.pump.seed << "\n";
  out << "# trials=" << spec.pump.num_trials << "\n";
  out << "# kernels=" << kernels::active().name << "\n";
  out << "p_single,p_two,levels,pump_steps_total,pair_fidelity,logical_error_rate,"
         "expected_raw_pairs,expected_gate_attempts\n";
  for (const ResultRow& r : rows) {
    out << format_double(r.p_single) << ',' << format_double(r.p_two) << ',' << r.levels << ','
        << r.pump_steps_total << ',' << format_double(r.pair_fidelity) << ','
        << format_double(r.logical_error_rate) << ',' << format_double(r.expected_raw_pairs)
        << ',' << format_double(r.expected_gate_attempts) << '\n';
  }
}

std::vector<ResultRow> parse_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {  // column-name row
      saw_header = true;
      continue;
    }
    const auto cols = split(line, ',');
    if (cols.size() != 8) throw config_error("csv: expected 8 columns, got row '" + line + "'");
    ResultRow r{};
    r.p_single = parse_number(cols[0], "csv:p_single");
    r.p_two = parse_number(cols[1], "csv:p_two");
    r.levels = static_cast<int>(parse_integer(cols[2], "csv:levels"));
    r.pump_steps_total = static_cast<int>(parse_integer(cols[3], "csv:pump_steps_total"));
    r.pair_fidelity = parse_number(cols[4], "csv:pair_fidelity");
    r.logical_error_rate = parse_number(cols[5], "csv:logical_error_rate");
    r.expected_raw_pairs = parse_number(cols[6], "csv:expected_raw_pairs");
    r.expected_gate_attempts = parse_number(cols[7], "csv:expected_gate_attempts");
    rows.push_back(r);
  }
  return rows;
}

double threshold_scan(ThresholdKind kind, double tolerance) {
  if (kind != ThresholdKind::entangling)
    throw std::invalid_argument("threshold_scan: unknown threshold kind");
  if (!(tolerance > 0.0)) throw std::invalid_argument("threshold_scan: tolerance must be > 0");
  const UnitaryGate cnot = gates::cnot();
  const auto entangling = [&](double q) {
    return is_entangling(choi_of_noisy_gate(cnot, q)).entangling;
  };
  double lo = 0.0, hi = 1.0;
  if (tolerance >= hi - lo) {
    // Degenerate contract: a single evaluation at the midpoint.
    const double mid = 0.5 * (lo + hi);
    entangling(mid);
    return mid;
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (entangling(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gatepump
