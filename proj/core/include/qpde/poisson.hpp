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

#include "qpde/evolution.hpp"

namespace qpde {

struct PoissonProblem {
  GridSpec grid;
  double epsilon = 1e-2;
  std::optional<int> kmax;  // band limit for the smooth route

  void validate() const;
  // kappa of the finite-difference route, d N^2 / 4.
  double kappa() const;
  // kappa of the smooth route, d kmax^2.
  double smooth_kappa() const;
};

// Eigenvalues of the stencil Laplacian, -4 N^2 sum_a sin^2(pi k_a / N),
// indexed by the wavenumber register value of all axes.
std::vector<double> laplacian_symbol(const GridSpec& grid);
// 1 / symbol with the zero mode mapped to 0.
std::vector<double> laplacian_pinv_symbol(const GridSpec& grid);
// -4 pi^2 sum_a k_a^2, the continuum symbol.
std::vector<double> smooth_laplacian_symbol(const GridSpec& grid);

struct PoissonOracleResult {
  CVec state;  // normalized, natural order
  double probability = 1.0;
};

// Pseudo-inverse solve in Fourier space. Throws if g has no mass outside the
// zero mode.
PoissonOracleResult poisson_oracle(const PoissonProblem& problem, const CVec& g);

// Exact N-term series of the 1D pseudo-inverse over exp(i 2 pi khat / N).
EvolutionCircuit build_poisson_1d_dft(const PoissonProblem& problem);

struct PoissonInverse {
  InverseSeries outer;
  // Ratio between the target inverse and the outer series value: 1 for the
  // finite-difference route, 16 / (4 pi^2) for the smooth one.
  double prefactor = 1.0;
  // Unit exp(-i dy dz x) of the outer series on the wavenumber registers.
  // The finite-difference route stores a block encoding of the Jacobi-Anger
  // product; the smooth route stores the exact controlled phase circuit with
  // its control as the only ancilla.
  BlockEncoding unit;
  std::vector<FourierSeries> inner;  // one per axis, finite-difference route only
  std::vector<cplx> unit_symbol;     // diagonal of the unit, register-indexed
  std::vector<cplx> symbol;          // realized pseudo-inverse, register-indexed
  double achieved_error = 0.0;       // max |symbol - target| on the nonzero spectrum
  double outer_terms = 0.0;          // G (2K + 1)
  double gate_estimate = 0.0;        // outer_terms times the gates of one unit
  std::string route;
};

// Two-level Fourier inverse with Jacobi-Anger inner units, within
// epsilon |A^+| of the pseudo-inverse on the nonzero spectrum.
PoissonInverse build_poisson_ddim(const PoissonProblem& problem);

// Same series for the continuum symbol restricted to |k| <= kmax, within
// epsilon |A'^+| of its inverse there.
PoissonInverse build_poisson_smooth(const PoissonProblem& problem);

// Applies a register-indexed symbol to a natural-order field.
CVec apply_symbol(const std::vector<cplx>& symbol, const CVec& natural, const GridSpec& grid);

// Largest |k| over the axes of each register index.
std::vector<int> max_abs_wavenumber(const GridSpec& grid);

std::string solution_csv(const CVec& natural, const GridSpec& grid);

}  // namespace qpde
