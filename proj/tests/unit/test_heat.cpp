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

#include <cmath>

#include "gtest/gtest.h"
#include "qpde/heat.hpp"
#include "qpde/oracle.hpp"
#include "test_util.hpp"

namespace qpde {
namespace {

using testing::plane_wave;
using testing::random_field;

TEST(Heat, OracleIdentityAtZeroTime) {
  HeatProblem p{{1, 4}, 1.0, 0.0};
  const CVec f0 = random_field(16, 5);
  const auto r = heat_oracle(p, f0);
  EXPECT_NEAR(r.probability, 1.0, 1e-14);
  EXPECT_LT((r.state - f0).norm(), 1e-13);
}

TEST(Heat, NyquistModeHasLowestProbability) {
  const int n = 4;
  const double nn = 16.0, t = 0.002, u = 0.7;
  HeatProblem p{{1, n}, u, t};
  const auto r = heat_oracle(p, plane_wave(n, -nn / 2.0));
  EXPECT_NEAR(r.probability, std::exp(-8.0 * t * nn * nn * u), 1e-13);
  const auto q = heat_oracle(p, random_field(16, 9));
  EXPECT_GE(q.probability, std::exp(-8.0 * t * nn * nn * u));
  EXPECT_LE(q.probability, 1.0);
}

TEST(Heat, OracleMatchesLaplacianExponentialInTwoDimensions) {
  GridSpec g{2, 3};
  const double t = 0.004, u = 1.0;
  HeatProblem p{g, u, t};
  const auto x = g.positions();
  CVec f0(64);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double xi = x[static_cast<std::size_t>(i)], xj = x[static_cast<std::size_t>(j)];
      f0(8 * i + j) = std::exp(-(xi * xi + (xj - 0.1) * (xj - 0.1)) / 0.05);
    }
  }
  const CVec want = oracle::dense_expm(t * u * oracle::laplacian(g)) * f0;
  const auto r = heat_oracle(p, f0);
  EXPECT_LT((r.state - want / want.norm()).norm(), 1e-10);
  EXPECT_NEAR(r.probability, want.squaredNorm() / f0.squaredNorm(), 1e-12);
}

TEST(Heat, KernelStaysInUnitInterval) {
  for (double t : {0.0, 1e-3, 0.01}) {
    HeatProblem p{{1, 5}, 2.0, t};
    for (double v : heat_kernel(p)) {
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Heat, GaussianJacobiAngerSeries) {
  HeatProblem p{{1, 4}, 1.0, 0.005, 1e-4};
  const EvolutionCircuit ev = build_heat_gaussian_ja(p);
  const FourierSeries& s = ev.series[0];
  for (int e = 1; e <= s.D; ++e) EXPECT_NEAR(std::abs(s.coeff(e) - s.coeff(-e)), 0.0, 1e-12);
  const CMat b = block_matrix(ev.block.circuit) * ev.block.scale;
  const auto kernel = heat_kernel(p);
  double err = 0.0;
  for (int i = 0; i < 16; ++i) err = std::max(err, std::abs(b(i, i) - kernel[static_cast<std::size_t>(i)]));
  EXPECT_LE(err, 1e-4);
  EXPECT_LT((b - CMat(b.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Heat, GaussianSurvivalTracksPrediction) {
  HeatProblem p{{1, 4}, 1.0, 0.005, 1e-4};
  const EvolutionCircuit ev = build_heat_gaussian_ja(p);
  const CVec f0 = random_field(16, 12);
  const FieldRun r = run_on_field(ev.full, f0, p.grid);
  const auto want = heat_oracle(p, f0);
  EXPECT_NEAR(r.probability * ev.block.scale * ev.block.scale, want.probability, 2e-4);
  EXPECT_GE(fidelity(r.field, want.state), 1.0 - 1e-6);
}

TEST(Heat, GaussianDegreeGrowsWithSquareRootOfTime) {
  std::vector<double> x, y;
  for (double t : {1e-3, 4e-3, 1.6e-2, 6.4e-2}) {
    HeatProblem p{{1, 5}, 1.0, t};
    const HeatSeries h = heat_gaussian_series(p, 1e-6);
    x.push_back(std::log(t));
    y.push_back(std::log(static_cast<double>(h.series.D)));
  }
  const double slope = (y.back() - y.front()) / (x.back() - x.front());
  EXPECT_NEAR(slope, 0.5, 0.2);
}

TEST(Heat, DftRouteIsExact) {
  for (double t : {0.0, 0.003, 0.5}) {
    HeatProblem p{{1, 3}, 1.0, t};
    const EvolutionCircuit ev = build_heat_dft(p);
    const CMat got = block_matrix(ev.full) * ev.block.scale;
    const CMat want = operator_to_register_layout(oracle::dense_expm(t * oracle::laplacian(p.grid)), p.grid);
    EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-10) << "t=" << t;
  }
}

TEST(Heat, PauliAnglesForThreeQubits) {
  const double t = 0.01, u = 1.0;
  HeatProblem p{{1, 3}, u, t};
  const HeatPauliCircuit c = build_heat_smooth_pauli(p, Layout::Sequential);
  const double unit = kPi * kPi * t * u;
  const std::vector<double> want{-8, -4, -2, -16, -8, -4};
  ASSERT_EQ(c.terms.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(c.terms[i].theta, want[i] * unit, 1e-14);
  EXPECT_EQ(c.terms[3].pauli.qubits, (std::vector<int>{0, 1}));
}

TEST(Heat, PauliProductIsGaussianKernel) {
  for (Layout layout : {Layout::Sequential, Layout::Parallel}) {
    for (int d : {1, 2}) {
      const int n = d == 1 ? 4 : 2;
      const double t = 0.002, u = 1.3;
      HeatProblem p{{d, n}, u, t};
      const HeatPauliCircuit c = build_heat_smooth_pauli(p, layout);
      const CMat b = block_matrix(c.evolution.block.circuit) * c.evolution.block.scale * c.scalar_prefactor;
      const auto k = khat_diagonal(n);
      const long nn = 1L << n;
      double err = 0.0;
      for (long i = 0; i < b.rows(); ++i) {
        double ksq = 0.0;
        for (int a = 0; a < d; ++a) {
          const long digit = (i / (d == 1 || a == 1 ? 1 : nn)) % nn;
          ksq += k[static_cast<std::size_t>(digit)] * k[static_cast<std::size_t>(digit)];
        }
        err = std::max(err, std::abs(b(i, i) - std::exp(-4.0 * kPi * kPi * t * u * ksq)));
      }
      EXPECT_LT(err, 1e-10);
      EXPECT_LT((b - CMat(b.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Heat, PauliSurvivalMatchesPrediction) {
  const int n = 4;
  const double t = 1e-3, u = 1.0, nn = 16.0;
  HeatProblem p{{1, n}, u, t};
  const CVec f0 = CVec::Ones(16) / 4.0;
  for (Layout layout : {Layout::Sequential, Layout::Parallel}) {
    const HeatPauliCircuit c = build_heat_smooth_pauli(p, layout);
    const FieldRun r = run_on_field(c.evolution.full, f0, p.grid);
    // Uniform data sits in the zero mode, where exp(sum theta P) is the
    // inverse of the dropped scalar.
    const double want = std::exp(-4.0 * kPi * kPi * t * u * (nn * nn - 1.0) / 3.0) / std::pow(c.scalar_prefactor, 2);
    EXPECT_NEAR(r.probability, want, 1e-9);
    EXPECT_NEAR(r.probability, predicted_pauli_probability(p, f0), 1e-9);
  }
  const CVec g = random_field(16, 4);
  const HeatPauliCircuit c = build_heat_smooth_pauli(p, Layout::Sequential);
  EXPECT_NEAR(run_on_field(c.evolution.full, g, p.grid).probability, predicted_pauli_probability(p, g), 1e-10);
}

TEST(Heat, PauliIdentityAtZeroTime) {
  HeatProblem p{{1, 3}, 1.0, 0.0};
  const HeatPauliCircuit c = build_heat_smooth_pauli(p);
  EXPECT_NEAR(run_on_field(c.evolution.full, random_field(8, 2), p.grid).probability, 1.0, 1e-14);
}

TEST(Heat, ParallelScheduleGroupsByDistance) {
  HeatProblem p{{1, 4}, 1.0, 0.01};
  const HeatPauliCircuit c = build_heat_smooth_pauli(p, Layout::Parallel);
  std::size_t total = 0;
  for (const auto& step : c.steps) {
    std::vector<int> used;
    int dist = -1;
    for (std::size_t i : step) {
      const auto& q = c.terms[i].pauli.qubits;
      if (q.size() == 2) {
        if (dist < 0) dist = q[1] - q[0];
        EXPECT_EQ(q[1] - q[0], dist);
      }
      for (int x : q) {
        EXPECT_EQ(std::count(used.begin(), used.end(), x), 0);
        used.push_back(x);
      }
    }
    total += step.size();
  }
  EXPECT_EQ(total, c.terms.size());
  EXPECT_LE(c.steps.size(), 2u * 4u - 1u);
  EXPECT_EQ(build_heat_smooth_pauli(p, Layout::Sequential).evolution.block.ancilla_count, 1);
}

TEST(Heat, SmoothGaussianRoute) {
  const int n = 4;
  const double t = 0.05, u = 1.0;
  HeatProblem p{{1, n}, u, t, 1e-3, 3};
  const HeatGaussianCircuit c = build_heat_smooth_gaussian(p);
  const CMat b = block_matrix(c.evolution.block.circuit) * c.evolution.block.scale;
  const auto k = khat_diagonal(n);
  double err = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double kk = k[static_cast<std::size_t>(i)];
    if (std::abs(kk) > 3) continue;
    err = std::max(err, std::abs(b(i, i) - std::exp(-4.0 * kPi * kPi * t * u * kk * kk)));
  }
  EXPECT_LE(err, 1e-3);
  EXPECT_NEAR(std::abs(b(8, 8)), 1.0, 1e-3);

  const CVec f0 = (plane_wave(n, 3.0) + plane_wave(n, -1.0)) / std::sqrt(2.0);
  const FieldRun r = run_on_field(c.evolution.full, f0, p.grid);
  EXPECT_GE(r.probability, std::exp(-8.0 * kPi * kPi * t * 9.0 * u) - 1e-3);
}

}  // namespace
}  // namespace qpde
