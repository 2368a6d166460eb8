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

#include <boost/math/special_functions/bessel.hpp>

#include "gtest/gtest.h"
#include "qpde/spectral.hpp"

namespace qpde {
namespace {

TEST(Bessel, MatchesBoostReference) {
  for (double x : {1e-3, 0.1, 1.0, 3.0, 10.0, 35.7, -4.2}) {
    const auto table = bessel_j_table(60, x);
    for (int k = 0; k <= 60; ++k) {
      EXPECT_NEAR(table[static_cast<std::size_t>(k)], boost::math::cyl_bessel_j(k, x), 1e-13)
          << "order " << k << " x " << x;
    }
  }
  EXPECT_NEAR(bessel_j(-3, 2.0), -boost::math::cyl_bessel_j(3, 2.0), 1e-14);
}

TEST(Bessel, SumRule) {
  for (double x : {0.5, 7.0, 42.0}) {
    const auto j = bessel_j_table(200, x);
    double s = j[0] * j[0];
    for (std::size_t k = 1; k < j.size(); ++k) s += 2.0 * j[k] * j[k];
    EXPECT_NEAR(s, 1.0, 1e-13);
  }
}

TEST(JacobiAnger, ZeroLambdaNeedsNoTerms) {
  const auto s = jacobi_anger_coeffs(0.0, 1e-10);
  EXPECT_EQ(s.D, 0);
  EXPECT_NEAR(s.coeff(0).real(), 1.0, 1e-15);
}

TEST(JacobiAnger, ErrorWithinEpsAndDegreeMonotone) {
  int last = 0;
  for (double lam : {0.5, 1.0, 3.0, 8.0, 20.0}) {
    const auto s = jacobi_anger_coeffs(lam, 1e-8);
    EXPECT_LE(s.achieved_error, 1e-8);
    EXPECT_GE(s.D, last);
    last = s.D;
    for (double th : {0.1, 1.3, 2.9, 4.4}) {
      EXPECT_LT(std::abs(s.evaluate(th) - std::exp(kI * lam * std::sin(th))), 1e-8);
    }
    // D grows like lambda + log(1/eps) / log(e + log(1/eps)/lambda)
    const double L = std::log(1e8);
    const double theory = lam + L / std::log(std::exp(1.0) + L / lam);
    EXPECT_LT(s.D, 2.0 * theory + 2.0);
  }
}

TEST(JacobiAnger, NegativeLambdaIsConjugateSeries) {
  const auto a = jacobi_anger_coeffs(3.0, 1e-10), b = jacobi_anger_coeffs(-3.0, 1e-10);
  ASSERT_EQ(a.D, b.D);
  for (int z = -a.D; z <= a.D; ++z) EXPECT_NEAR(b.coeff(z).real(), a.coeff(-z).real(), 1e-15);
}

TEST(JacobiAnger, RejectsNonPositiveEps) {
  EXPECT_THROW(jacobi_anger_coeffs(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(jacobi_anger_coeffs(1.0, -1.0), InvalidArgument);
}

TEST(DftSeries, ReconstructsGridValuesExactly) {
  std::vector<cplx> v(16);
  for (int j = 0; j < 16; ++j) v[static_cast<std::size_t>(j)] = cplx(std::cos(0.3 * j * j), std::sin(j));
  const auto s = dft_series_of_diagonal(v, -8.0);
  EXPECT_EQ(s.D, 8);
  EXPECT_EQ(s.coeff(8), cplx(0.0));
  for (int j = 0; j < 16; ++j) EXPECT_LT(std::abs(s.evaluate(s.unit * (j - 8.0)) - v[static_cast<std::size_t>(j)]), 1e-12);
  EXPECT_LE(s.achieved_error, 1e-12);
}

TEST(Diagonals, TaylorConvergesToExact) {
  const int n = 4;
  const auto exact = derivative_diagonal(n, 1);
  const auto small = derivative_diagonal(n, 1, {DiagonalMode::SmallAngle});
  const auto t1 = derivative_diagonal(n, 1, {DiagonalMode::Taylor, 1});
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(t1.values[i] - small.values[i]), 0.0, 1e-12);
  const auto t41 = derivative_diagonal(n, 1, {DiagonalMode::Taylor, 41});
  for (std::size_t i = 0; i < 16; ++i) EXPECT_LT(std::abs(t41.values[i] - exact.values[i]), 1e-10);
  EXPECT_THROW(derivative_diagonal(n, 1, {DiagonalMode::Taylor, 4}), InvalidArgument);
  const auto s2 = derivative_diagonal(n, 2, {DiagonalMode::Taylor, 1});
  const auto small2 = derivative_diagonal(n, 2, {DiagonalMode::SmallAngle});
  for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(s2.values[i] - small2.values[i]), 0.0, 1e-10);
}

TEST(Diagonals, AroundKstarIsSecondOrderAccurate) {
  // Error near kstar shrinks like |k - kstar|^3.
  const int n = 8;
  const double ks = 20.0;
  const auto exact = derivative_diagonal(n, 1);
  const auto approx = derivative_diagonal(n, 1, {DiagonalMode::AroundKstar, 1, ks});
  auto err = [&](int dk) {
    const auto i = static_cast<std::size_t>(128 + ks + dk);
    return std::abs(exact.values[i] - approx.values[i]);
  };
  EXPECT_NEAR(err(0), 0.0, 1e-10);
  const double ratio = err(8) / err(4);
  EXPECT_NEAR(ratio, 8.0, 1.0);
}

TEST(GaussianQuadrature, HeatKernelWithinEps) {
  const int nn = 16;
  std::vector<double> s;
  for (int k = -nn / 2; k < nn / 2; ++k) s.push_back(std::sin(kPi * k / nn));
  const auto q = gaussian_fourier_coeffs(0.01, 1.0, nn, 1e-4, s);
  for (int k = -nn / 2; k < nn / 2; ++k) {
    const double ss = std::sin(kPi * k / nn);
    EXPECT_LT(std::abs(q.evaluate(ss) - std::exp(-4.0 * 0.01 * nn * nn * ss * ss)), 1e-4);
  }
  EXPECT_NEAR(q.c1, q.delta_omega * q.delta_omega / 16.0, 1e-15);
  EXPECT_NEAR(q.c2, nn * 0.1 * q.delta_omega, 1e-12);
}

TEST(InverseSeries, ScalarCheckAndOddSymmetry) {
  const auto s = inverse_fourier_params(4.0, 1e-2);
  EXPECT_LE(inverse_series_error(s, 1000), 1e-2);
  for (double x : {0.3, 0.7, 1.0}) EXPECT_LT(std::abs(s.evaluate(-x) + s.evaluate(x)), 1e-12);
  EXPECT_GT(s.G, 0);
  EXPECT_GT(s.K, 0);
}

TEST(SeriesCsv, ColumnsAndOrder) {
  FourierSeries s;
  s.min_index = -1;
  s.coeffs = {cplx(0.5, 0), cplx(0, 1), cplx(-0.25, 0.125)};
  EXPECT_EQ(series_csv(s), "zeta,re,im\n-1,0.5,0\n0,0,1\n1,-0.25,0.125\n");
}

}  // namespace
}  // namespace qpde
