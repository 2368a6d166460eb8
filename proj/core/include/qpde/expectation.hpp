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

#include <vector>

#include "qpde/grid.hpp"
#include "qpde/spectral.hpp"

namespace qpde {

enum class SeriesKind { Fourier, Polynomial };

// sum_z c_z exp(i z H) (Fourier, z from min_index) or sum_z c_z H^z
// (Polynomial, z from 0) applied in Fourier space, observed with B.
struct ExpectationPlan {
  SeriesKind kind = SeriesKind::Fourier;
  int min_index = 0;
  std::vector<cplx> coeffs;
  CMat observable;  // natural grid order

  int max_index() const { return min_index + static_cast<int>(coeffs.size()) - 1; }
  std::size_t term_count() const { return coeffs.size() * coeffs.size(); }
  void validate(const GridSpec& grid) const;
};

ExpectationPlan fourier_plan(const FourierSeries& series, const CMat& observable);
ExpectationPlan polynomial_plan(const std::vector<cplx>& coeffs, const CMat& observable);

// unit * khat of one axis, indexed like the wavenumber vector of the grid.
std::vector<double> khat_hamiltonian(const GridSpec& grid, double unit, int axis = 0);

struct ExpectationResult {
  double value = 0.0;
  double imaginary = 0.0;  // residual imaginary part of the sum
  CMat terms;              // C(z, e), rows and columns from min_index
};

// Evaluates every C(z, e) = <phi_z| B |phi_e> with phi_e = F g_e(H) F^dagger f0
// as an independent inner product, then sums conj(c_z) c_e C(z, e) in a
// fixed order.
ExpectationResult expectation_via_terms(const ExpectationPlan& plan, const CVec& f0,
                                        const std::vector<double>& hamiltonian, const GridSpec& grid);

// <f|B|f> on the solution f = F (sum_z c_z g_z(H)) F^dagger f0.
double direct_expectation(const ExpectationPlan& plan, const CVec& f0, const std::vector<double>& hamiltonian,
                          const GridSpec& grid);

}  // namespace qpde
