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

#include "qpde/expectation.hpp"

#include <cmath>

#include "qpde/oracle.hpp"

namespace qpde {

void ExpectationPlan::validate(const GridSpec& grid) const {
  require(!coeffs.empty(), "plan has no coefficients");
  require(kind == SeriesKind::Fourier || min_index == 0, "polynomial plans start at degree 0");
  require(static_cast<std::size_t>(observable.rows()) == grid.size() && observable.rows() == observable.cols(),
          "observable does not match grid");
  const double scale = std::max(1.0, observable.cwiseAbs().maxCoeff());
  require((observable - observable.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "observable must be Hermitian");
}

ExpectationPlan fourier_plan(const FourierSeries& series, const CMat& observable) {
  return {SeriesKind::Fourier, series.min_index, series.coeffs, observable};
}

ExpectationPlan polynomial_plan(const std::vector<cplx>& coeffs, const CMat& observable) {
  return {SeriesKind::Polynomial, 0, coeffs, observable};
}

std::vector<double> khat_hamiltonian(const GridSpec& grid, double unit, int axis) {
  grid.validate();
  require(axis >= 0 && axis < grid.d, "axis out of range");
  const std::size_t nn = static_cast<std::size_t>(grid.N());
  std::size_t stride = 1;
  for (int a = grid.d - 1; a > axis; --a) stride *= nn;
  std::vector<double> h(grid.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double k = static_cast<double>((i / stride) % nn) - static_cast<double>(nn) / 2.0;
    h[i] = unit * k;
  }
  return h;
}

namespace {

cplx term_factor(SeriesKind kind, int z, double h) {
  return kind == SeriesKind::Fourier ? std::polar(1.0, z * h) : cplx(std::pow(h, z));
}

// F g(H) F^dagger f0 for one index z.
CVec branch(const ExpectationPlan& plan, int z, const CVec& modes, const std::vector<double>& h,
            const GridSpec& grid) {
  CVec m = modes;
  for (std::size_t i = 0; i < h.size(); ++i) m(static_cast<Eigen::Index>(i)) *= term_factor(plan.kind, z, h[i]);
  return oracle::from_wavenumbers(m, grid);
}

void check_inputs(const ExpectationPlan& plan, const CVec& f0, const std::vector<double>& h, const GridSpec& grid) {
  plan.validate(grid);
  require(static_cast<std::size_t>(f0.size()) == grid.size(), "field size does not match grid");
  require(h.size() == grid.size(), "hamiltonian size does not match grid");
}

}  // namespace

ExpectationResult expectation_via_terms(const ExpectationPlan& plan, const CVec& f0,
                                        const std::vector<double>& hamiltonian, const GridSpec& grid) {
  check_inputs(plan, f0, hamiltonian, grid);
  const CVec modes = oracle::to_wavenumbers(f0, grid);
  const auto count = static_cast<Eigen::Index>(plan.coeffs.size());
  std::vector<CVec> phi;
  for (int z = plan.min_index; z <= plan.max_index(); ++z) phi.push_back(branch(plan, z, modes, hamiltonian, grid));
  ExpectationResult r;
  r.terms.resize(count, count);
  for (Eigen::Index a = 0; a < count; ++a) {
    for (Eigen::Index b = 0; b < count; ++b) {
      r.terms(a, b) = phi[static_cast<std::size_t>(a)].dot(plan.observable * phi[static_cast<std::size_t>(b)]);
    }
  }
  cplx sum = 0.0;
  for (Eigen::Index a = 0; a < count; ++a) {
    for (Eigen::Index b = 0; b < count; ++b) {
      sum += std::conj(plan.coeffs[static_cast<std::size_t>(a)]) * plan.coeffs[static_cast<std::size_t>(b)] *
             r.terms(a, b);
    }
  }
  r.value = sum.real();
  r.imaginary = sum.imag();
  return r;
}

double direct_expectation(const ExpectationPlan& plan, const CVec& f0, const std::vector<double>& hamiltonian,
                          const GridSpec& grid) {
  check_inputs(plan, f0, hamiltonian, grid);
  CVec modes = oracle::to_wavenumbers(f0, grid);
  for (std::size_t i = 0; i < hamiltonian.size(); ++i) {
    cplx g = 0.0;
    for (int z = plan.min_index; z <= plan.max_index(); ++z) {
      g += plan.coeffs[static_cast<std::size_t>(z - plan.min_index)] * term_factor(plan.kind, z, hamiltonian[i]);
    }
    modes(static_cast<Eigen::Index>(i)) *= g;
  }
  const CVec f = oracle::from_wavenumbers(modes, grid);
  return f.dot(plan.observable * f).real();
}

}  // namespace qpde
