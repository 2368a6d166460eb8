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

#include "qpde/advection.hpp"

#include <algorithm>
#include <cmath>

#include "qpde/oracle.hpp"

namespace qpde {

void AdvectionProblem::validate() const {
  grid.validate();
  require(static_cast<int>(velocity.size()) == grid.d, "need one velocity per dimension");
  require(std::isfinite(time), "time must be finite");
}

double AdvectionProblem::max_speed() const {
  double m = 0.0;
  for (double r : velocity) m = std::max(m, std::abs(r));
  return m;
}

CVec advect_oracle(const AdvectionProblem& problem, const CVec& f0) {
  problem.validate();
  const double nn = static_cast<double>(problem.grid.N());
  return oracle::fft_evolve(f0, problem.grid, [&](const std::vector<double>& k) {
    double phase = 0.0;
    for (std::size_t a = 0; a < k.size(); ++a) {
      phase -= problem.time * nn * problem.velocity[a] * std::sin(2.0 * kPi * k[a] / nn);
    }
    return std::polar(1.0, phase);
  });
}

std::vector<cplx> advection_symbol(const AdvectionProblem& problem, int axis) {
  const double nn = static_cast<double>(problem.grid.N());
  const double r = problem.velocity[static_cast<std::size_t>(axis)];
  std::vector<cplx> out;
  for (double k : khat_diagonal(problem.grid.n)) {
    out.push_back(std::polar(1.0, -problem.time * nn * r * std::sin(2.0 * kPi * k / nn)));
  }
  return out;
}

namespace {

EvolutionCircuit finish(const AdvectionProblem& problem, std::vector<FourierSeries> series,
                        Layout layout, const char* route) {
  const int n = problem.grid.n;
  std::vector<Circuit> oracles(series.size(), build_U_khat(n, 1));
  EvolutionCircuit out;
  out.block = per_dimension_series(problem.grid, series, oracles, layout);
  out.full = wrap_in_fourier(out.block, problem.grid);
  out.series = std::move(series);
  out.route = route;
  return out;
}

}  // namespace

EvolutionCircuit build_advection_ja(const AdvectionProblem& problem, Layout layout) {
  problem.validate();
  // Errors of the d factors add up.
  const double eps = problem.epsilon / problem.grid.d;
  const double nn = static_cast<double>(problem.grid.N());
  std::vector<FourierSeries> series;
  for (double r : problem.velocity) {
    series.push_back(jacobi_anger_coeffs(-problem.time * nn * r, eps));
  }
  return finish(problem, std::move(series), layout, "jacobi-anger");
}

EvolutionCircuit build_advection_dft(const AdvectionProblem& problem, Layout layout) {
  problem.validate();
  const double offset = -static_cast<double>(problem.grid.N()) / 2.0;
  std::vector<FourierSeries> series;
  for (int a = 0; a < problem.grid.d; ++a) {
    series.push_back(dft_series_of_diagonal(advection_symbol(problem, a), offset));
  }
  return finish(problem, std::move(series), layout, "dft");
}

EvolutionCircuit build_advection_smooth(const AdvectionProblem& problem) {
  problem.validate();
  const GridSpec& g = problem.grid;
  EvolutionCircuit out;
  Circuit c(g.qubits());
  for (int a = 0; a < g.d; ++a) {
    const double r = problem.velocity[static_cast<std::size_t>(a)];
    c.append(phase_circuit(khat_operator(g.n, -2.0 * kPi * problem.time * r)), register_qubits(g, a));
  }
  out.block.circuit = c;
  out.block.description = "smooth advection";
  out.full = wrap_in_fourier(out.block, g);
  out.route = "smooth";
  return out;
}

}  // namespace qpde
