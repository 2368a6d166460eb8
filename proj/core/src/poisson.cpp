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

#include "qpde/poisson.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qpde/oracle.hpp"

namespace qpde {

void PoissonProblem::validate() const {
  grid.validate();
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  if (kmax) require(*kmax >= 1 && *kmax < grid.N() / 2, "kmax must lie in [1, N/2)");
}

double PoissonProblem::kappa() const {
  const double nn = static_cast<double>(grid.N());
  return grid.d * nn * nn / 4.0;
}

double PoissonProblem::smooth_kappa() const {
  require(kmax.has_value(), "smooth route needs kmax");
  return grid.d * static_cast<double>(*kmax) * static_cast<double>(*kmax);
}

namespace {

// Signed wavenumbers of every axis for each register index.
template <class Fn>
std::vector<double> per_index(const GridSpec& grid, Fn axis_value) {
  const long nn = grid.N();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::size_t rest = i;
    for (int a = grid.d - 1; a >= 0; --a) {
      const double k = static_cast<double>(static_cast<long>(rest % static_cast<std::size_t>(nn)) - nn / 2);
      rest /= static_cast<std::size_t>(nn);
      out[i] += axis_value(k);
    }
  }
  return out;
}

std::vector<double> pinv_of(const std::vector<double>& values) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] == 0.0 ? 0.0 : 1.0 / values[i];
  return out;
}

}  // namespace

std::vector<double> laplacian_symbol(const GridSpec& grid) {
  grid.validate();
  const double nn = static_cast<double>(grid.N());
  return per_index(grid, [nn](double k) {
    const double s = std::sin(kPi * k / nn);
    return -4.0 * nn * nn * s * s;
  });
}

std::vector<double> laplacian_pinv_symbol(const GridSpec& grid) { return pinv_of(laplacian_symbol(grid)); }

std::vector<double> smooth_laplacian_symbol(const GridSpec& grid) {
  grid.validate();
  return per_index(grid, [](double k) { return -4.0 * kPi * kPi * k * k; });
}

std::vector<int> max_abs_wavenumber(const GridSpec& grid) {
  grid.validate();
  const long nn = grid.N();
  std::vector<int> out(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::size_t rest = i;
    for (int a = 0; a < grid.d; ++a) {
      const long k = static_cast<long>(rest % static_cast<std::size_t>(nn)) - nn / 2;
      rest /= static_cast<std::size_t>(nn);
      out[i] = std::max(out[i], static_cast<int>(std::abs(k)));
    }
  }
  return out;
}

CVec apply_symbol(const std::vector<cplx>& symbol, const CVec& natural, const GridSpec& grid) {
  require(symbol.size() == grid.size(), "symbol size does not match grid");
  CVec modes = oracle::to_wavenumbers(natural, grid);
  for (std::size_t i = 0; i < symbol.size(); ++i) modes(static_cast<Eigen::Index>(i)) *= symbol[i];
  return oracle::from_wavenumbers(modes, grid);
}

PoissonOracleResult poisson_oracle(const PoissonProblem& problem, const CVec& g) {
  problem.validate();
  const double norm = g.norm();
  require(norm > 0.0, "right-hand side is zero");
  const auto pinv = laplacian_pinv_symbol(problem.grid);
  std::vector<cplx> symbol(pinv.begin(), pinv.end());
  const CVec f = apply_symbol(symbol, g, problem.grid);
  // Any nonzero mode is amplified by at least 1 / (4 d N^2).
  const double nn = static_cast<double>(problem.grid.N());
  if (f.norm() <= 1e-13 * norm / (4.0 * problem.grid.d * nn * nn)) {
    throw InvalidArgument("right-hand side lies entirely in the zero mode");
  }
  return {f / f.norm(), f.squaredNorm() / (norm * norm)};
}

EvolutionCircuit build_poisson_1d_dft(const PoissonProblem& problem) {
  problem.validate();
  require(problem.grid.d == 1, "the DFT route is one-dimensional");
  const int n = problem.grid.n;
  const auto pinv = laplacian_pinv_symbol(problem.grid);
  FourierSeries s = dft_series_of_diagonal({pinv.begin(), pinv.end()}, -static_cast<double>(problem.grid.N()) / 2.0);
  s.variable = "khat";
  EvolutionCircuit out;
  out.block = realize_fourier_series(s, build_U_khat(n, 1));
  out.full = wrap_in_fourier(out.block, problem.grid);
  out.series = {std::move(s)};
  out.route = "dft";
  return out;
}

namespace {

double target_error(const PoissonInverse& inv, const std::vector<double>& target, const std::vector<bool>& mask) {
  double err = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (mask[i]) err = std::max(err, std::abs(inv.symbol[i] - target[i]));
  }
  return err;
}

void realize(PoissonInverse& inv) {
  inv.symbol.resize(inv.unit_symbol.size());
  for (std::size_t i = 0; i < inv.unit_symbol.size(); ++i) {
    const cplx down = inv.unit_symbol[i];
    inv.symbol[i] = inv.prefactor * inv.outer.evaluate_with_units(down, std::conj(down));
  }
  inv.outer_terms = inv.outer.length();
  inv.gate_estimate = inv.outer_terms * static_cast<double>(count_gates(inv.unit.circuit).total());
}

// exp(-i c (cos theta - 1)) as a Jacobi-Anger series in theta = 2 pi k / N.
FourierSeries cosine_unit_series(double c, double eps, int n) {
  // exp(-i c cos theta) = sum_v i^v J_v(-c) exp(i v theta), obtained from the
  // sine expansion shifted by pi / 2.
  FourierSeries s = jacobi_anger_coeffs(-c, eps);
  const cplx global = std::polar(1.0, c);
  for (int v = s.min_index; v <= s.max_index(); ++v) {
    const cplx iv = std::pow(kI, ((v % 4) + 4) % 4);
    s.coeffs[static_cast<std::size_t>(v - s.min_index)] *= iv * global;
  }
  s.unit = 2.0 * kPi / std::ldexp(1.0, n);
  s.variable = "khat";
  return s;
}

}  // namespace

PoissonInverse build_poisson_ddim(const PoissonProblem& problem) {
  problem.validate();
  const GridSpec& g = problem.grid;
  require(g.n >= 2, "the finite-difference inverse needs n >= 2");
  const double nn = static_cast<double>(g.N());
  const double kappa = problem.kappa();
  const auto target = laplacian_pinv_symbol(g);
  std::vector<bool> mask(target.size());
  double pinv_norm = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    mask[i] = target[i] != 0.0;
    pinv_norm = std::max(pinv_norm, std::abs(target[i]));
  }
  const double budget = problem.epsilon * pinv_norm;
  const auto khat = khat_diagonal(g.n);

  // Half the budget goes to the outer series; a miss tightens it.
  double eps_outer = budget / 2.0;
  for (int attempt = 0; attempt < 6; ++attempt, eps_outer /= 2.0) {
    PoissonInverse inv;
    inv.route = "finite-difference";
    inv.outer = inverse_fourier_params(kappa, eps_outer);
    const double c = 2.0 * nn * nn * inv.outer.dy * inv.outer.dz / (16.0 * kappa);
    const double terms = static_cast<double>(g.d) * inv.outer.G * inv.outer.K;
    const double eps_inner = std::max(eps_outer / terms, 1e-15);
    std::vector<Circuit> oracles;
    for (int a = 0; a < g.d; ++a) {
      inv.inner.push_back(cosine_unit_series(c, eps_inner, g.n));
      oracles.push_back(build_U_khat(g.n, 1));
    }
    inv.unit = per_dimension_series(g, inv.inner, oracles, Layout::Sequential);
    std::vector<cplx> axis_values;
    for (double k : khat) axis_values.push_back(inv.inner[0].evaluate(inv.inner[0].unit * k));
    inv.unit_symbol.assign(g.size(), 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::size_t rest = i;
      for (int a = 0; a < g.d; ++a) {
        inv.unit_symbol[i] *= axis_values[rest % static_cast<std::size_t>(g.N())];
        rest /= static_cast<std::size_t>(g.N());
      }
    }
    realize(inv);
    inv.achieved_error = target_error(inv, target, mask);
    if (inv.achieved_error <= budget) return inv;
  }
  throw InvalidArgument(fmt::format("Poisson inverse did not reach epsilon={}", problem.epsilon));
}

PoissonInverse build_poisson_smooth(const PoissonProblem& problem) {
  problem.validate();
  const GridSpec& g = problem.grid;
  const double kappa = problem.smooth_kappa();
  const auto symbol = smooth_laplacian_symbol(g);
  const auto kabs = max_abs_wavenumber(g);
  std::vector<double> target(symbol.size());
  std::vector<bool> mask(symbol.size());
  for (std::size_t i = 0; i < symbol.size(); ++i) {
    mask[i] = symbol[i] != 0.0 && kabs[i] <= *problem.kmax;
    target[i] = mask[i] ? 1.0 / symbol[i] : 0.0;
  }
  // |A'^+| = 1 / (4 pi^2) on the band.
  const double budget = problem.epsilon / (4.0 * kPi * kPi);
  const double prefactor = 16.0 / (4.0 * kPi * kPi);

  double eps_outer = budget / prefactor / 2.0;
  for (int attempt = 0; attempt < 6; ++attempt, eps_outer /= 2.0) {
    PoissonInverse inv;
    inv.route = "smooth";
    inv.prefactor = prefactor;
    inv.outer = inverse_fourier_params(kappa, eps_outer);
    const double factor = inv.outer.dy * inv.outer.dz / kappa;
    // exp(i dy dz khat^2 / kappa) on every axis, all sharing one control.
    Circuit c(g.qubits(), 1);
    for (int a = 0; a < g.d; ++a) {
      auto map = register_qubits(g, a);
      map.push_back(g.qubits());
      c.append(controlled_phase_circuit(khat_squared_operator(g.n, factor)), map);
    }
    inv.unit.circuit = std::move(c);
    inv.unit.ancilla_count = 1;
    inv.unit.description = "controlled exp(i dy dz khat^2 / kappa)";
    inv.unit_symbol.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      inv.unit_symbol[i] = std::polar(1.0, -factor * symbol[i] / (4.0 * kPi * kPi));
    }
    realize(inv);
    inv.achieved_error = target_error(inv, target, mask);
    if (inv.achieved_error <= budget) return inv;
  }
  throw InvalidArgument(fmt::format("smooth Poisson inverse did not reach epsilon={}", problem.epsilon));
}

std::string solution_csv(const CVec& natural, const GridSpec& grid) {
  require(static_cast<std::size_t>(natural.size()) == grid.size(), "field size does not match grid");
  const auto x = grid.positions();
  const std::size_t nn = static_cast<std::size_t>(grid.N());
  std::string out;
  for (int a = 0; a < grid.d; ++a) out += fmt::format("x{},", a);
  out += "re,im\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> c(static_cast<std::size_t>(grid.d));
    std::size_t rest = i;
    for (int a = grid.d - 1; a >= 0; --a) {
      c[static_cast<std::size_t>(a)] = x[rest % nn];
      rest /= nn;
    }
    for (double v : c) out += fmt::format("{:.17g},", v);
    const cplx z = natural(static_cast<Eigen::Index>(i));
    out += fmt::format("{:.17g},{:.17g}\n", z.real(), z.imag());
  }
  return out;
}

}  // namespace qpde
