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

#include <string>
#include <vector>

#include "qpde/common.hpp"

namespace qpde {

enum class DiagonalMode {
  Exact,        // finite-difference eigenvalues
  SmallAngle,   // continuum limit, i 2 pi k and -4 pi^2 k^2
  Taylor,       // odd Taylor polynomial of order chi
  AroundKstar,  // second-order expansion around kstar
};

struct DiagonalSpec {
  DiagonalMode mode = DiagonalMode::Exact;
  int chi = 1;
  double kstar = 0.0;
};

struct SpectralDiagonal {
  std::vector<cplx> values;  // indexed by wavenumber register value
  std::string label;
};

// Fourier-space eigenvalues of the central first difference (order 1) or
// the second difference (order 2) on N = 2^n points of spacing 1/N.
SpectralDiagonal derivative_diagonal(int n, int order, const DiagonalSpec& spec = {});

// Bessel functions of the first kind by Miller's backward recurrence.
std::vector<double> bessel_j_table(int max_order, double x);
double bessel_j(int order, double x);

// f(theta) = sum_{z = min_index}^{max_index} c_z exp(i z theta), where theta
// = unit * x for some diagonal operator x.
struct FourierSeries {
  int min_index = 0;
  std::vector<cplx> coeffs;
  double unit = 1.0;
  std::string variable;
  int D = 0;
  double epsilon = 0.0;
  double achieved_error = 0.0;

  int max_index() const { return min_index + static_cast<int>(coeffs.size()) - 1; }
  cplx coeff(int zeta) const;
  cplx evaluate(double theta) const;
  double one_norm() const;
};

// Truncated expansion of exp(i lambda sin theta) with the smallest D whose
// sup-norm error on a dense theta grid is at most eps.
FourierSeries jacobi_anger_coeffs(double lambda, double eps);

// Exact series for values given on the M grid points x = offset + j, with
// unit 2 pi / M. Indices run over [-M/2, M/2]; the last coefficient is 0.
FourierSeries dft_series_of_diagonal(const std::vector<cplx>& values, double offset);

// Trapezoidal Gaussian-integral quadrature
//   exp(-4 t u N^2 s^2) ~= sum_{|z| <= G} w_z exp(-i C2 z s),
// w_z = C0 exp(-C1 z^2), for s in [-1, 1].
struct GaussianQuadrature {
  double delta_omega = 0.0;
  int G = 0;
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<double> weights;  // z = -G..G
  double achieved_error = 0.0;

  double weight(int z) const { return weights[static_cast<std::size_t>(z + G)]; }
  cplx evaluate(double s) const;
};

// `scale` multiplies the exponent: N for the finite-difference kernel of a
// grid with N points, 1 for the continuum kernel evaluated at s = pi k.
GaussianQuadrature gaussian_fourier_coeffs(double t, double u, double scale, double eps,
                                           const std::vector<double>& s_points);

// Two-level Fourier approximation of 1/(16 kappa x) on [1/kappa, 1] (and its
// odd reflection):
//   (i / (16 kappa sqrt(2 pi))) sum_{z<G} dy sum_{|e|<=K} dz^2 e
//       exp(-(e dz)^2 / 2) exp(-i z e dy dz x).
struct InverseSeries {
  double kappa = 1.0;
  int G = 0;
  int K = 0;
  double dy = 0.0;
  double dz = 0.0;
  double epsilon = 0.0;
  double achieved_error = 0.0;

  cplx evaluate(double x) const;
  // Same series with exp(-i dy dz x) replaced by `down` and its inverse by
  // `up`, as produced by an approximate block encoding.
  cplx evaluate_with_units(cplx down, cplx up) const;
  // Number of (z, e) terms, G (2K + 1).
  double length() const { return static_cast<double>(G) * (2.0 * K + 1.0); }
};

InverseSeries inverse_fourier_params(double kappa, double eps);
double inverse_series_error(const InverseSeries& s, int points = 1000);

std::string series_csv(const FourierSeries& s);

}  // namespace qpde
