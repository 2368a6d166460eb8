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

#include "app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "qpde/oracle.hpp"

namespace qpde::app {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(fmt::format("{} must be an object", where));
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
  }
}

template <class T>
T get(const Json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(fmt::format("{}.{} is missing or has the wrong type", where, key));
  }
}

template <class T>
void get_if(const Json& j, const std::string& key, const std::string& where, T& out) {
  if (j.contains(key)) out = get<T>(j, key, where);
}

std::vector<double> per_axis(const Json& j, const std::string& key, int d, const std::string& where) {
  const Json& v = j.at(key);
  if (v.is_number()) return std::vector<double>(static_cast<std::size_t>(d), v.get<double>());
  auto out = get<std::vector<double>>(j, key, where);
  if (static_cast<int>(out.size()) != d) throw ConfigError(fmt::format("{}.{} needs {} entries", where, key, d));
  return out;
}

InitialSpec parse_initial(const Json& j, int d) {
  const std::string where = "initial";
  reject_unknown(j, {"profile", "k", "sigma", "center", "index", "kmax", "path"}, where);
  InitialSpec s;
  s.profile = get<std::string>(j, "profile", where);
  static const std::map<std::string, std::set<std::string>> fields{
      {"plane_wave", {"profile", "k"}},          {"gaussian", {"profile", "sigma", "center"}},
      {"delta", {"profile", "index"}},           {"band_limited", {"profile", "kmax"}},
      {"file", {"profile", "path"}},
  };
  const auto it = fields.find(s.profile);
  if (it == fields.end()) throw ConfigError(fmt::format("unknown initial profile '{}'", s.profile));
  reject_unknown(j, it->second, where + " (" + s.profile + ")");
  if (s.profile == "plane_wave") s.k = per_axis(j, "k", d, where);
  if (s.profile == "gaussian") {
    get_if(j, "sigma", where, s.sigma);
    if (!(s.sigma > 0.0)) throw ConfigError("initial.sigma must be positive");
    s.center = j.contains("center") ? per_axis(j, "center", d, where) : std::vector<double>(static_cast<std::size_t>(d), 0.0);
  }
  if (s.profile == "delta") {
    for (double x : per_axis(j, "index", d, where)) s.index.push_back(static_cast<long>(x));
  }
  if (s.profile == "band_limited") {
    get_if(j, "kmax", where, s.kmax);
    if (s.kmax < 0) throw ConfigError("initial.kmax must be non-negative");
  }
  if (s.profile == "file") s.path = get<std::string>(j, "path", where);
  return s;
}

Json initial_to_json(const InitialSpec& s) {
  Json j;
  j["profile"] = s.profile;
  if (s.profile == "plane_wave") j["k"] = s.k;
  if (s.profile == "gaussian") {
    j["sigma"] = s.sigma;
    j["center"] = s.center;
  }
  if (s.profile == "delta") j["index"] = s.index;
  if (s.profile == "band_limited") j["kmax"] = s.kmax;
  if (s.profile == "file") j["path"] = s.path;
  return j;
}

}  // namespace

const std::vector<std::string>& methods_for(const std::string& pde) {
  static const std::map<std::string, std::vector<std::string>> table{
      {"advection", {"jacobi_anger", "dft", "smooth"}},
      {"heat", {"gaussian_jacobi_anger", "dft", "smooth_pauli", "smooth_gaussian"}},
      {"wave", {"jacobi_anger_1d", "dft_1d", "smooth"}},
      {"poisson", {"dft_1d", "fourier_inverse", "smooth"}},
      {"lindblad", {"dilation"}},
  };
  const auto it = table.find(pde);
  if (it == table.end()) throw ConfigError(fmt::format("unknown pde '{}'", pde));
  return it->second;
}

ExperimentConfig parse_config(const Json& j) {
  const std::string where = "config";
  reject_unknown(j, {"schema_version", "pde", "method", "grid", "params", "epsilon", "kmax", "steps", "initial",
                     "seed", "tolerance", "output"},
                 where);
  const int version = get<int>(j, "schema_version", where);
  if (version != kSchemaVersion) {
    throw ConfigError(fmt::format("schema_version {} is not supported (expected {})", version, kSchemaVersion));
  }
  ExperimentConfig c;
  c.pde = get<std::string>(j, "pde", where);
  c.method = get<std::string>(j, "method", where);
  const auto& methods = methods_for(c.pde);
  if (std::find(methods.begin(), methods.end(), c.method) == methods.end()) {
    throw ConfigError(fmt::format("method '{}' is not available for pde '{}'", c.method, c.pde));
  }

  const Json& g = j.at("grid");
  reject_unknown(g, {"d", "n", "convention"}, "grid");
  c.grid.d = get<int>(g, "d", "grid");
  c.grid.n = get<int>(g, "n", "grid");
  if (c.grid.d < 1 || c.grid.n < 1) throw ConfigError("grid needs d >= 1 and n >= 1");
  std::string conv = c.pde == "lindblad" ? "unit_interval" : "symmetric";
  get_if(g, "convention", "grid", conv);
  if (conv == "symmetric") {
    c.grid.convention = GridConvention::Symmetric;
  } else if (conv == "unit_interval") {
    c.grid.convention = GridConvention::UnitInterval;
  } else {
    throw ConfigError(fmt::format("unknown grid convention '{}'", conv));
  }

  c.r.assign(static_cast<std::size_t>(c.grid.d), 0.0);
  if (j.contains("params")) {
    const Json& p = j.at("params");
    reject_unknown(p, {"r", "u", "v", "t", "tau"}, "params");
    if (p.contains("r")) c.r = per_axis(p, "r", c.grid.d, "params");
    get_if(p, "u", "params", c.u);
    get_if(p, "v", "params", c.v);
    get_if(p, "t", "params", c.t);
    get_if(p, "tau", "params", c.tau);
  }
  if (!(c.t >= 0.0) || !(c.tau >= 0.0) || !(c.u >= 0.0)) throw ConfigError("t, tau and u must be non-negative");
  get_if(j, "epsilon", where, c.epsilon);
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  if (j.contains("kmax")) c.kmax = get<int>(j, "kmax", where);
  if (j.contains("steps")) {
    c.steps = get<int>(j, "steps", where);
    if (*c.steps < 1) throw ConfigError("steps must be at least 1");
  }
  if (j.contains("initial")) c.initial = parse_initial(j.at("initial"), c.grid.d);
  if (c.initial.center.empty() && c.initial.profile == "gaussian") {
    c.initial.center.assign(static_cast<std::size_t>(c.grid.d), c.pde == "lindblad" ? 0.5 : 0.0);
  }
  get_if(j, "seed", where, c.seed);
  if (j.contains("tolerance")) {
    const Json& t = j.at("tolerance");
    reject_unknown(t, {"fidelity", "probability", "operator_distance"}, "tolerance");
    if (t.contains("fidelity")) c.tolerance.fidelity = get<double>(t, "fidelity", "tolerance");
    if (t.contains("probability")) c.tolerance.probability = get<double>(t, "probability", "tolerance");
    if (t.contains("operator_distance")) {
      c.tolerance.operator_distance = get<double>(t, "operator_distance", "tolerance");
    }
  }
  if (j.contains("output")) {
    const Json& o = j.at("output");
    reject_unknown(o, {"report", "field_csv"}, "output");
    get_if(o, "report", "output", c.report_path);
    get_if(o, "field_csv", "output", c.field_csv);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path));
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("config '{}' is not valid JSON: {}", path, e.what()));
  }
  return parse_config(j);
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["pde"] = c.pde;
  j["method"] = c.method;
  j["grid"] = {{"d", c.grid.d},
               {"n", c.grid.n},
               {"convention", c.grid.convention == GridConvention::Symmetric ? "symmetric" : "unit_interval"}};
  j["params"] = {{"r", c.r}, {"u", c.u}, {"v", c.v}, {"t", c.t}, {"tau", c.tau}};
  j["epsilon"] = c.epsilon;
  if (c.kmax) j["kmax"] = *c.kmax;
  if (c.steps) j["steps"] = *c.steps;
  j["initial"] = initial_to_json(c.initial);
  j["seed"] = c.seed;
  Json tol = Json::object();
  if (c.tolerance.fidelity) tol["fidelity"] = *c.tolerance.fidelity;
  if (c.tolerance.probability) tol["probability"] = *c.tolerance.probability;
  if (c.tolerance.operator_distance) tol["operator_distance"] = *c.tolerance.operator_distance;
  j["tolerance"] = tol;
  j["output"] = {{"report", c.report_path}, {"field_csv", c.field_csv}};
  return j;
}

namespace {

CVec read_field_file(const std::string& path, std::size_t size) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open initial field '{}'", path));
  CVec v(static_cast<Eigen::Index>(size));
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("re", 0) == 0) continue;
    std::istringstream row(line);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(row >> re)) throw ConfigError(fmt::format("bad row '{}' in '{}'", line, path));
    if (row >> comma && comma == ',') row >> im;
    if (i >= size) throw ConfigError(fmt::format("'{}' has more than {} rows", path, size));
    v(static_cast<Eigen::Index>(i++)) = cplx(re, im);
  }
  if (i != size) throw ConfigError(fmt::format("'{}' has {} rows, expected {}", path, i, size));
  return v;
}

}  // namespace

CVec initial_field(const ExperimentConfig& c) {
  const GridSpec& g = c.grid;
  const auto x = g.positions();
  const std::size_t nn = static_cast<std::size_t>(g.N());
  const InitialSpec& s = c.initial;
  CVec v(static_cast<Eigen::Index>(g.size()));
  if (s.profile == "file") {
    v = read_field_file(s.path, g.size());
  } else if (s.profile == "band_limited") {
    // Random modes with |k_a| <= kmax on every axis, drawn from the seed.
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> dist;
    CVec modes = CVec::Zero(v.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::size_t rest = i;
      bool inside = true;
      for (int a = 0; a < g.d; ++a) {
        const long k = static_cast<long>(rest % nn) - static_cast<long>(nn / 2);
        rest /= nn;
        inside = inside && std::abs(k) <= s.kmax;
      }
      const cplx z(dist(rng), dist(rng));
      if (inside) modes(static_cast<Eigen::Index>(i)) = z;
    }
    v = oracle::from_wavenumbers(modes, g);
  } else {
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::size_t rest = i;
      std::vector<std::size_t> l(static_cast<std::size_t>(g.d));
      for (int a = g.d - 1; a >= 0; --a) {
        l[static_cast<std::size_t>(a)] = rest % nn;
        rest /= nn;
      }
      cplx val = 1.0;
      for (int a = 0; a < g.d; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const double xa = x[l[ua]];
        if (s.profile == "plane_wave") {
          val *= std::polar(1.0, 2.0 * kPi * s.k[ua] * xa);
        } else if (s.profile == "gaussian") {
          const double dx = xa - s.center[ua];
          val *= std::exp(-dx * dx / (2.0 * s.sigma * s.sigma));
        } else {
          val *= static_cast<long>(l[ua]) == s.index[ua] ? 1.0 : 0.0;
        }
      }
      v(static_cast<Eigen::Index>(i)) = val;
    }
  }
  const double norm = v.norm();
  if (!(norm > 0.0)) throw ConfigError("initial field is zero");
  return v / norm;
}

}  // namespace qpde::app
