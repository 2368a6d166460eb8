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

#include "qpde/heat.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qpde/oracle.hpp"

namespace qpde {

void HeatProblem::validate() const {
  grid.validate();
  require(diffusivity > 0.0, "diffusivity must be positive");
  require(time >= 0.0, "time must be nonnegative");
  if (kmax) require(*kmax >= 0 && *kmax < grid.N() / 2, "kmax must lie in [0, N/2)");
}

HeatOracleResult heat_oracle(const HeatProblem& problem, const CVec& f0) {
  problem.validate();
  const double nn = static_cast<double>(problem.grid.N());
  const double rate = 4.0 * problem.time * problem.diffusivity * nn * nn;
  const CVec out = oracle::fft_evolve(f0, problem.grid, [&](const std::vector<double>& k) {
    double e = 0.0;
    for (double ka : k) {
      const double s = std::sin(kPi * ka / nn);
      e += s * s;
    }
    return cplx(std::exp(-rate * e), 0.0);
  });
  HeatOracleResult r;
  const double n0 = f0.norm();
  require(n0 > 0.0, "input field is zero");
  r.probability = out.squaredNorm() / (n0 * n0);
  r.state = out / out.norm();
  return r;
}

std::vector<double> heat_kernel(const HeatProblem& problem) {
  const double nn = static_cast<double>(problem.grid.N());
  std::vector<double> out;
  for (double k : khat_diagonal(problem.grid.n)) {
    const double s = std::sin(kPi * k / nn);
    out.push_back(std::exp(-4.0 * problem.time * problem.diffusivity * nn * nn * s * s));
  }
  return out;
}

namespace {

double sup_error(const FourierSeries& s, const std::vector<double>& kernel, int n) {
  const auto k = khat_diagonal(n);
  double err = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    err = std::max(err, std::abs(s.evaluate(s.unit * k[i]) - kernel[i]));
  }
  return err;
}

}  // namespace

HeatSeries heat_gaussian_series(const HeatProblem& problem, double eps) {
  problem.validate();
  require(eps > 0.0 && eps < 1.0, "heat series needs 0 < eps < 1");
  const int n = problem.grid.n;
  const double nn = static_cast<double>(problem.grid.N());
  const std::vector<double> kernel = heat_kernel(problem);
  std::vector<double> s_points;
  for (double k : khat_diagonal(n)) s_points.push_back(std::sin(kPi * k / nn));

  double eq = eps / 2.0;
  double ej = eps / 4.0;
  for (int attempt = 0; attempt < 12; ++attempt) {
    HeatSeries h;
    h.quadrature = gaussian_fourier_coeffs(problem.time, problem.diffusivity, nn, eq, s_points);
    const auto& q = h.quadrature;
    const double lam = q.c2 * q.G;
    const int dmax = lam > 0.0 ? jacobi_anger_coeffs(lam, ej).D : 0;
    std::vector<std::vector<double>> tables;
    for (int z = 0; z <= q.G; ++z) tables.push_back(bessel_j_table(dmax, q.c2 * z));
    FourierSeries& s = h.series;
    s.min_index = -dmax;
    s.D = dmax;
    s.unit = kPi / nn;
    s.variable = "pi khat / N";
    s.epsilon = eps;
    s.coeffs.assign(static_cast<std::size_t>(2 * dmax + 1), 0.0);
    for (int e = -dmax; e <= dmax; ++e) {
      // J_e(-x) = J_{-e}(x), and the sum over +-z pairs kills odd orders.
      if (e % 2 != 0) continue;
      const int ae = std::abs(e);
      double c = q.weight(0) * tables[0][static_cast<std::size_t>(ae)];
      for (int z = 1; z <= q.G; ++z) c += 2.0 * q.weight(z) * tables[static_cast<std::size_t>(z)][static_cast<std::size_t>(ae)];
      s.coeffs[static_cast<std::size_t>(e + dmax)] = c;
    }
    s.achieved_error = sup_error(s, kernel, n);
    if (s.achieved_error <= eps) return h;
    eq /= 4.0;
    ej /= 4.0;
  }
  throw InvalidArgument(fmt::format("heat series did not reach eps={}", eps));
}

EvolutionCircuit build_heat_gaussian_ja(const HeatProblem& problem, Layout layout) {
  problem.validate();
  require(problem.time > 0.0, "gaussian route needs t > 0");
  const HeatSeries h = heat_gaussian_series(problem, problem.epsilon / problem.grid.d);
  std::vector<FourierSeries> series(static_cast<std::size_t>(problem.grid.d), h.series);
  std::vector<Circuit> oracles(series.size(), build_U_khat(problem.grid.n, 2));
  EvolutionCircuit out;
  out.block = per_dimension_series(problem.grid, series, oracles, layout);
  out.full = wrap_in_fourier(out.block, problem.grid);
  out.series = std::move(series);
  out.route = "gaussian-jacobi-anger";
  return out;
}

EvolutionCircuit build_heat_dft(const HeatProblem& problem, Layout layout) {
  problem.validate();
  std::vector<cplx> values;
  for (double v : heat_kernel(problem)) values.emplace_back(v, 0.0);
  const FourierSeries one = dft_series_of_diagonal(values, -static_cast<double>(problem.grid.N()) / 2.0);
  std::vector<FourierSeries> series(static_cast<std::size_t>(problem.grid.d), one);
  std::vector<Circuit> oracles(series.size(), build_U_khat(problem.grid.n, 1));
  EvolutionCircuit out;
  out.block = per_dimension_series(problem.grid, series, oracles, layout);
  out.full = wrap_in_fourier(out.block, problem.grid);
  out.series = std::move(series);
  out.route = "dft";
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> parallel_steps(int n, std::size_t base) {
  // Terms come in khat_squared_operator order: n linear, then pairs (z, e).
  std::vector<std::vector<std::size_t>> steps;
  std::vector<std::size_t> linear;
  for (int b = 0; b < n; ++b) linear.push_back(base + static_cast<std::size_t>(b));
  steps.push_back(linear);
  auto pair_index = [&](int z, int e) {
    std::size_t idx = static_cast<std::size_t>(n);
    for (int a = 0; a < z; ++a) idx += static_cast<std::size_t>(n - 1 - a);
    return base + idx + static_cast<std::size_t>(e - z - 1);
  };
  for (int dist = 1; dist < n; ++dist) {
    std::vector<std::size_t> even, odd;
    for (int z = 0; z + dist < n; ++z) ((z / dist) % 2 == 0 ? even : odd).push_back(pair_index(z, z + dist));
    if (!even.empty()) steps.push_back(even);
    if (!odd.empty()) steps.push_back(odd);
  }
  return steps;
}

ZPhaseOperator smooth_generator(const HeatProblem& problem) {
  return khat_squared_operator(problem.grid.n, -4.0 * kPi * kPi * problem.time * problem.diffusivity);
}

}  // namespace

HeatPauliCircuit build_heat_smooth_pauli(const HeatProblem& problem, Layout layout) {
  problem.validate();
  const GridSpec& g = problem.grid;
  const ZPhaseOperator gen = smooth_generator(problem);
  HeatPauliCircuit out;
  for (int a = 0; a < g.d; ++a) {
    const std::size_t base = out.terms.size();
    for (const auto& t : gen.terms) {
      out.terms.push_back({t.weight, PauliString{t.qubits, std::string(t.qubits.size(), 'Z')}, a});
      out.theta_abs_sum += std::abs(t.weight);
    }
    if (layout == Layout::Parallel) {
      const auto s = parallel_steps(g.n, base);
      // Dimensions act on disjoint registers and share the schedule.
      if (a == 0) {
        out.steps = s;
      } else {
        for (std::size_t i = 0; i < s.size(); ++i) {
          out.steps[i].insert(out.steps[i].end(), s[i].begin(), s[i].end());
        }
      }
    } else {
      for (std::size_t i = base; i < out.terms.size(); ++i) out.steps.push_back({i});
    }
  }
  out.scalar_prefactor = std::exp(gen.constant * g.d);

  std::size_t width = 1;
  for (const auto& s : out.steps) width = std::max(width, s.size());
  BlockEncoding& be = out.evolution.block;
  be.circuit = Circuit(g.qubits(), static_cast<int>(width));
  be.ancilla_count = static_cast<int>(width);
  be.scale = std::exp(out.theta_abs_sum);
  for (const auto& step : out.steps) {
    for (std::size_t j = 0; j < step.size(); ++j) {
      const PauliTerm& t = out.terms[step[j]];
      const BlockEncoding b = pauli_exp_block(t.theta, t.pauli, g.n);
      std::vector<int> map = register_qubits(g, t.axis);
      map.push_back(g.qubits() + static_cast<int>(j));
      be.circuit.append(b.circuit, map);
    }
    for (std::size_t j = 0; j < step.size(); ++j) be.circuit.postselect_now(g.qubits() + static_cast<int>(j), 0);
  }
  be.description = fmt::format("{} pauli exponentials in {} steps", out.terms.size(), out.steps.size());
  out.evolution.full = wrap_in_fourier(be, g);
  out.evolution.route = "smooth-pauli";
  return out;
}

double predicted_pauli_probability(const HeatProblem& problem, const CVec& f0) {
  problem.validate();
  const GridSpec& g = problem.grid;
  const ZPhaseOperator gen = smooth_generator(problem);
  double abs_sum = 0.0;
  for (const auto& t : gen.terms) abs_sum += std::abs(t.weight);
  abs_sum *= g.d;
  const double rate = 4.0 * kPi * kPi * problem.time * problem.diffusivity;
  const CVec out = oracle::fft_evolve(f0, g, [&](const std::vector<double>& k) {
    double e = 0.0;
    for (double ka : k) e += -rate * ka * ka - gen.constant;
    return cplx(std::exp(e), 0.0);
  });
  return std::exp(-2.0 * abs_sum) * out.squaredNorm() / f0.squaredNorm();
}

HeatGaussianCircuit build_heat_smooth_gaussian(const HeatProblem& problem) {
  problem.validate();
  require(problem.kmax.has_value(), "smooth gaussian route needs kmax");
  const GridSpec& g = problem.grid;
  std::vector<double> s_points;
  for (int k = -*problem.kmax; k <= *problem.kmax; ++k) s_points.push_back(kPi * k);
  HeatGaussianCircuit out;
  out.quadrature = gaussian_fourier_coeffs(problem.time, problem.diffusivity, 1.0, problem.epsilon / g.d, s_points);
  const auto& q = out.quadrature;
  FourierSeries s;
  s.min_index = -q.G;
  s.D = q.G;
  s.coeffs.assign(q.weights.begin(), q.weights.end());
  // exp(-i pi C3 khat z) with C3 = sqrt(t u) delta_omega.
  s.unit = -kPi * q.c2;
  s.variable = "khat";
  s.epsilon = problem.epsilon;
  s.achieved_error = q.achieved_error;
  std::vector<FourierSeries> series(static_cast<std::size_t>(g.d), s);
  std::vector<Circuit> oracles(series.size(), controlled_phase_circuit(khat_operator(g.n, s.unit)));
  out.evolution.block = per_dimension_series(g, series, oracles, Layout::Sequential);
  out.evolution.full = wrap_in_fourier(out.evolution.block, g);
  out.evolution.series = std::move(series);
  out.evolution.route = "smooth-gaussian";
  return out;
}

}  // namespace qpde
