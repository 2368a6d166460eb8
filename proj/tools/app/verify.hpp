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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "app/config.hpp"

namespace qpde::app {

struct Budget {
  int statevector_qubits = 20;
  int density_qubits = 10;
};

// --budget flag, then the QPDE_BUDGET environment variable, then 20.
Budget resolve_budget(std::optional<int> flag);

struct GateSummary {
  std::size_t one_qubit = 0;
  std::size_t two_qubit = 0;
  std::size_t multi_controlled = 0;
  std::size_t dense_multi_qubit = 0;
  std::size_t total = 0;
  std::size_t depth = 0;
  int system_qubits = 0;
  int ancillas = 0;
  int series_degree = 0;
  std::size_t select_queries = 0;
  double series_terms = 0.0;  // terms of the outer series, Poisson inverse routes
  double scale = 1.0;
};

struct VerificationReport {
  std::string status = "ok";  // ok, tolerance_failure, error
  std::string error_kind;     // config, budget_exceeded, zero_mode_input, invalid_argument
  std::string message;
  std::optional<double> operator_distance;
  std::optional<double> state_fidelity;
  std::optional<double> survival_measured;
  std::optional<double> survival_predicted;
  std::optional<double> l1_distance;  // Lindblad only
  GateSummary gates;
  std::vector<std::string> failed_checks;
  Json config;
  CVec field;  // final field, natural order
  GridSpec grid;
  double wall_time = 0.0;

  bool passed() const { return status == "ok"; }
};

VerificationReport verify(const ExperimentConfig& config, const Budget& budget);

// Deterministic report; wall time lives in timing_to_json.
Json report_to_json(const VerificationReport& r);
Json timing_to_json(const VerificationReport& r);

// 0 pass, 1 tolerance failure, 2 config error, 3 budget exceeded, 4 other.
int exit_code(const VerificationReport& r);

struct SweepRow {
  double value = 0.0;
  VerificationReport report;
};

struct SweepResult {
  std::string axis;
  std::vector<SweepRow> rows;

  std::string csv() const;
  // Log-log least-squares slopes of each cost column against the axis
  // value, and against N = 2^n when sweeping n.
  Json summary() const;
};

const std::vector<std::string>& sweep_axes();
ExperimentConfig with_axis_value(const ExperimentConfig& c, const std::string& axis, double value);
SweepResult sweep(const ExperimentConfig& c, const std::string& axis, const std::vector<double>& values,
                  const Budget& budget);

// Series coefficients of the configured route as axis,zeta,re,im rows.
std::string coeffs_csv(const ExperimentConfig& c);

std::string census_csv(int d, int n);
Json census_json(int d, int n);

}  // namespace qpde::app
