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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpde/grid.hpp"

namespace qpde::app {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Configuration problems: unknown keys, bad values, wrong schema.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct InitialSpec {
  std::string profile = "gaussian";  // plane_wave, gaussian, delta, band_limited, file
  std::vector<double> k;             // plane_wave, per axis
  double sigma = 0.1;                // gaussian
  std::vector<double> center;        // gaussian, per axis
  std::vector<long> index;           // delta, per axis
  int kmax = 2;                      // band_limited
  std::string path;                  // file, one "re,im" row per point in natural order
};

struct Tolerance {
  std::optional<double> fidelity;           // 1 - fidelity must not exceed this
  std::optional<double> probability;        // |measured - predicted| survival
  std::optional<double> operator_distance;  // against the route's own target
};

struct ExperimentConfig {
  std::string pde;
  std::string method;
  GridSpec grid;
  std::vector<double> r;  // advection velocity, one per axis
  double u = 1.0;         // diffusivity
  double v = 1.0;         // wave speed
  double t = 0.0;
  double tau = 0.0;       // Trotter step for the smooth wave route
  double epsilon = 1e-6;
  std::optional<int> kmax;
  std::optional<int> steps;  // Lindblad steps; calibrated when absent
  InitialSpec initial;
  std::uint64_t seed = 1;
  Tolerance tolerance;
  std::string report_path = "report.json";
  std::string field_csv;  // empty: no field dump
};

// Methods accepted for each pde, in the order they are documented.
const std::vector<std::string>& methods_for(const std::string& pde);

ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);
// Canonical form: every field present, fixed key order.
Json config_to_json(const ExperimentConfig& c);

// Normalized initial field in natural grid order.
CVec initial_field(const ExperimentConfig& c);

}  // namespace qpde::app
