// Copyright 2026 The qpde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "app/config.hpp"
#include "app/verify.hpp"
#include "qpde/poisson.hpp"

namespace fs = std::filesystem;
using namespace qpde::app;

namespace {

constexpr int kConfigExit = 2;

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qpde::Error(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Common {
  std::string config;
  std::string out;
  std::optional<int> budget;
  std::optional<std::uint64_t> seed;
  bool json = false;
  bool csv = false;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config) {
  auto* opt = cmd->add_option("--config", c.config, "Experiment configuration (JSON)")->check(CLI::ExistingFile);
  if (needs_config) opt->required();
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--budget", c.budget, "Statevector qubit budget (default: $QPDE_BUDGET or 20)");
  cmd->add_option("--seed", c.seed, "Override the configured seed");
  auto* j = cmd->add_flag("--json", c.json, "Print JSON to stdout");
  auto* s = cmd->add_flag("--csv", c.csv, "Print CSV to stdout");
  j->excludes(s);
}

ExperimentConfig load(const Common& c) {
  ExperimentConfig cfg = load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

int cmd_verify(const Common& c) {
  const ExperimentConfig cfg = load(c);
  const VerificationReport r = verify(cfg, resolve_budget(c.budget));
  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  write_file(dir / cfg.report_path, dump(report_to_json(r)));
  write_file(dir / "timing.json", dump(timing_to_json(r)));
  if (!cfg.field_csv.empty() && r.field.size() == static_cast<Eigen::Index>(r.grid.size())) {
    write_file(dir / cfg.field_csv, qpde::solution_csv(r.field, r.grid));
  }
  if (c.json) {
    std::cout << dump(report_to_json(r));
  } else if (c.csv && r.field.size() == static_cast<Eigen::Index>(r.grid.size())) {
    std::cout << qpde::solution_csv(r.field, r.grid);
  } else {
    std::cerr << fmt::format("{} {}: {}", cfg.pde, cfg.method, r.status);
    if (!r.message.empty()) std::cerr << " (" << r.error_kind << ": " << r.message << ")";
    for (const auto& f : r.failed_checks) std::cerr << "\n  " << f;
    std::cerr << "\n";
  }
  return exit_code(r);
}

int cmd_sweep(const Common& c, const std::string& axis, const std::vector<double>& values) {
  const ExperimentConfig cfg = load(c);
  const SweepResult s = sweep(cfg, axis, values, resolve_budget(c.budget));
  if (!c.out.empty()) {
    write_file(fs::path(c.out) / "sweep.csv", s.csv());
    write_file(fs::path(c.out) / "sweep_summary.json", dump(s.summary()));
  }
  if (c.json) {
    std::cout << dump(s.summary());
  } else {
    std::cout << s.csv();
  }
  return 0;
}

int cmd_census(const Common& c, int d, int n) {
  const std::string text = c.json ? dump(census_json(d, n)) : census_csv(d, n);
  if (!c.out.empty()) write_file(fs::path(c.out) / (c.json ? "census.json" : "census.csv"), text);
  std::cout << text;
  return 0;
}

int cmd_coeffs(const Common& c) {
  const std::string text = coeffs_csv(load(c));
  if (!c.out.empty()) write_file(fs::path(c.out) / "coeffs.csv", text);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circuit-versus-oracle verification of spectral PDE solvers"};
  app.require_subcommand(1);

  Common common;
  auto* verify_cmd = app.add_subcommand("verify", "Run one circuit against its classical oracle");
  add_common(verify_cmd, common, true);

  std::string axis;
  std::vector<double> values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Verify over a range of one parameter");
  add_common(sweep_cmd, common, true);
  sweep_cmd->add_option("--axis", axis, "n, t, epsilon, d or kmax")->required()->check(CLI::IsMember(sweep_axes()));
  sweep_cmd->add_option("--values", values, "Axis values")->required();

  int d = 2, n = 3;
  auto* census_cmd = app.add_subcommand("census", "Multi-controlled gate census of the wave block encoding");
  add_common(census_cmd, common, false);
  census_cmd->add_option("--d", d, "Dimension")->check(CLI::Range(1, 16));
  census_cmd->add_option("--n", n, "Qubits per dimension")->check(CLI::Range(1, 16));

  auto* coeffs_cmd = app.add_subcommand("coeffs", "Fourier-series coefficients of a route");
  add_common(coeffs_cmd, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (*verify_cmd) return cmd_verify(common);
    if (*sweep_cmd) return cmd_sweep(common, axis, values);
    if (*census_cmd) return cmd_census(common, d, n);
    return cmd_coeffs(common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const qpde::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
