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
#include "qpde/oracle.hpp"
#include "qpde/wave.hpp"
#include "test_util.hpp"

namespace qpde {
namespace {

using testing::random_field;

CVec zero_mean(CVec v) {
  v.array() -= v.mean();
  return v;
}

TEST(Wave, GammaSetsOfLowDimension) {
  const GammaSet one = gamma_ternary_tree(1);
  ASSERT_EQ(one.strings.size(), 1u);
  EXPECT_EQ(one.strings[0].ops, "X");
  const GammaSet three = gamma_ternary_tree(3);
  EXPECT_EQ(three.qubits, 1);
  ASSERT_EQ(three.strings.size(), 3u);
  EXPECT_EQ(three.strings[0].ops + three.strings[1].ops + three.strings[2].ops, "XYZ");
  const GammaSet two = gamma_ternary_tree(2);
  EXPECT_EQ(two.strings[0].ops + two.strings[1].ops, "XY");
}

TEST(Wave, GammaSetsAnticommute) {
  for (int d = 1; d <= 6; ++d) {
    const GammaSet g = gamma_ternary_tree(d);
    ASSERT_EQ(static_cast<int>(g.strings.size()), d);
    EXPECT_EQ(g.qubits, d == 1 ? 1 : (d % 2 ? (d - 1) / 2 : d / 2));
    const int bound = static_cast<int>(std::ceil(std::log(d % 2 ? d : d + 1) / std::log(3.0) - 1e-12));
    EXPECT_LE(g.max_weight, std::max(1, bound)) << d;
    const auto k = static_cast<Eigen::Index>(1) << g.qubits;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const CMat ga = g.strings[static_cast<std::size_t>(a)].full_matrix(g.qubits);
        const CMat gb = g.strings[static_cast<std::size_t>(b)].full_matrix(g.qubits);
        const CMat want = a == b ? CMat(2.0 * CMat::Identity(k, k)) : CMat::Zero(k, k);
        EXPECT_LT((ga * gb + gb * ga - want).cwiseAbs().maxCoeff(), 1e-15) << d << " " << a << " " << b;
      }
    }
  }
}

TEST(Wave, HamiltonianSquaresToLaplacian) {
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 2; ++n) {
      GridSpec g{d, n};
      const double v = 0.8;
      const GammaSet gam = gamma_ternary_tree(d);
      const CMat h = wave_hamiltonian(gam, g, v);
      EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
      const auto k = static_cast<Eigen::Index>(1) << gam.qubits;
      const CMat want = -v * v * kron(CMat::Identity(k, k), oracle::laplacian(g));
      EXPECT_LT((h * h - want).cwiseAbs().maxCoeff(), 1e-10) << d << " " << n;
    }
  }
  GridSpec g{2, 2};
  EXPECT_LT(wave_hamiltonian(gamma_ternary_tree(2), g, 0.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Wave, OneDimensionalHamiltonianIsOffDiagonal) {
  GridSpec g{1, 3};
  const CMat h = wave_hamiltonian(gamma_ternary_tree(1), g, 1.5);
  const CMat o = sqrt_minus_laplacian(g, 0);
  EXPECT_LT(h.topLeftCorner(8, 8).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((h.topRightCorner(8, 8) - 1.5 * o).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((h.bottomLeftCorner(8, 8) - 1.5 * o).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Wave, EncodingVariants) {
  GridSpec g{1, 3};
  const double v = 1.2;
  const CMat h = wave_hamiltonian(gamma_ternary_tree(1), g, v);
  const CMat o = sqrt_minus_laplacian(g, 0);
  const CVec f = zero_mean(random_field(8, 1)), dtf = zero_mean(random_field(8, 2));

  const WaveEncoding a = encode_initial(WaveVariant::A, 0, f, dtf, h, 1);
  EXPECT_LT((a.block(0) * a.norm - dtf).norm(), 1e-12);
  EXPECT_LT((a.block(1) * a.norm + kI * v * (o * f)).norm(), 1e-12);

  const WaveEncoding only_f = encode_initial(WaveVariant::A, 0, f, CVec::Zero(8), h, 1);
  CVec want = -kI * (h * (CVec(16) << f, CVec::Zero(8)).finished());
  EXPECT_LT((only_f.state - want / want.norm()).norm(), 1e-12);

  for (WaveVariant var : {WaveVariant::A, WaveVariant::B}) {
    for (int d : {1, 2}) {
      GridSpec gd{d, 2};
      const GammaSet gam = gamma_ternary_tree(d);
      const CMat hd = wave_hamiltonian(gam, gd, v);
      const CVec fd = zero_mean(random_field(gd.size(), 3)), dd = zero_mean(random_field(gd.size(), 4));
      const WaveEncoding e = encode_initial(var, 0, fd, dd, hd, gam.qubits);
      const WaveFields back = decode_wave(var, 0, e.state, hd, gam.qubits, e.norm);
      EXPECT_LT((back.f - fd).norm(), 1e-10);
      EXPECT_LT((back.dtf - dd).norm(), 1e-10);
    }
  }
}

TEST(Wave, VariantBRejectsKernelData) {
  GridSpec g{1, 3};
  const CMat h = wave_hamiltonian(gamma_ternary_tree(1), g, 1.0);
  const CVec f = zero_mean(random_field(8, 1));
  const CVec flat = CVec::Ones(8);
  EXPECT_THROW(encode_initial(WaveVariant::B, 0, f, flat, h, 1), InvalidArgument);
}

TEST(Wave, PseudoInverseUndoesHamiltonianOffKernel) {
  GridSpec g{2, 2};
  const CMat h = wave_hamiltonian(gamma_ternary_tree(2), g, 1.0);
  const CMat hp = oracle::dense_pinv(h, 1e-10);
  const CVec x = h * random_field(32, 8);
  EXPECT_LT((hp * x - oracle::dense_pinv(h * h, 1e-10) * (h * x)).norm(), 1e-10);
  EXPECT_LT((h * (hp * x) - x).norm(), 1e-10);
}

TEST(Wave, StandingWaveOscillates) {
  const int n = 3;
  GridSpec g{1, n};
  const double v = 0.9, nn = 8.0, k = 2.0;
  const auto x = g.positions();
  CVec f(8);
  for (int l = 0; l < 8; ++l) f(l) = std::sin(2.0 * kPi * k * x[static_cast<std::size_t>(l)]);
  const CMat h = wave_hamiltonian(gamma_ternary_tree(1), g, v);
  const WaveEncoding e = encode_initial(WaveVariant::A, 0, f, CVec::Zero(8), h, 1);
  const double omega = v * 2.0 * nn * std::sin(kPi * k / nn);
  for (double t : {0.0, 0.05, 0.31}) {
    const CVec psi = evolve_wave_oracle(h, e.state, t);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    const WaveFields w = decode_wave(WaveVariant::A, 0, psi, h, 1, e.norm);
    EXPECT_LT((w.f - std::cos(omega * t) * f).norm(), 1e-10) << t;
  }
}

// Dense second-order reference: (f, dtf)' = [[0, 1], [v^2 L, 0]] (f, dtf).
std::pair<CVec, CVec> second_order_reference(const GridSpec& g, double v, const CVec& f, const CVec& dtf, double t) {
  const auto s = static_cast<Eigen::Index>(g.size());
  CMat m = CMat::Zero(2 * s, 2 * s);
  m.topRightCorner(s, s) = CMat::Identity(s, s);
  m.bottomLeftCorner(s, s) = v * v * oracle::laplacian(g);
  CVec x(2 * s);
  x << f, dtf;
  const CVec y = oracle::dense_expm(t * m) * x;
  return {y.head(s), y.tail(s)};
}

TEST(Wave, DecodedEvolutionMatchesSecondOrderSystem) {
  for (int d : {1, 2}) {
    for (int n : {2, 3}) {
      GridSpec g{d, n};
      const double v = 1.1, t = 0.07;
      const GammaSet gam = gamma_ternary_tree(d);
      const CMat h = wave_hamiltonian(gam, g, v);
      const CVec f = zero_mean(random_field(g.size(), 11)), dtf = zero_mean(random_field(g.size(), 12));
      const auto ref = second_order_reference(g, v, f, dtf, t);
      for (WaveVariant var : {WaveVariant::A, WaveVariant::B}) {
        const WaveEncoding e = encode_initial(var, 0, f, dtf, h, gam.qubits);
        const WaveFields w = decode_wave(var, 0, evolve_wave_oracle(h, e.state, t), h, gam.qubits, e.norm);
        EXPECT_LT((w.f - ref.first).norm(), 1e-8) << d << " " << n;
        EXPECT_LT((w.dtf - ref.second).norm(), 1e-8) << d << " " << n;
      }
    }
  }
}

TEST(Wave, StatePreparationCircuitReproducesEncodings) {
  GridSpec g{2, 2};
  const GammaSet gam = gamma_ternary_tree(2);
  const CMat h = wave_hamiltonian(gam, g, 0.7);
  const CVec f = zero_mean(random_field(16, 5)), dtf = zero_mean(random_field(16, 6));
  for (WaveVariant var : {WaveVariant::A, WaveVariant::B}) {
    const WaveEncoding e = encode_initial(var, 1, f, dtf, h, gam.qubits);
    const Circuit c = wave_state_prep_circuit(var, 1, f, dtf, h, gam.qubits, g);
    const RunResult r = run(c, StateVector::basis(5, 0));
    const CVec got = wave_from_register_layout(r.state.amplitudes, gam.qubits, g);
    EXPECT_GT(fidelity(got, e.state), 1.0 - 1e-12);
    EXPECT_LT(compare_up_to_phase(got, e.state).max_deviation, 1e-10);
  }
}

CMat register_evolution(int n, double t) {
  GridSpec g{1, n};
  const CMat h = wave_hamiltonian(gamma_ternary_tree(1), g, 1.0);
  return wave_operator_to_register_layout(oracle::dense_expm(-kI * t * h), 1, g);
}

TEST(Wave, OneDimensionalJacobiAnger) {
  const int n = 3;
  const double t = 2.0 / 8.0;
  const EvolutionCircuit ev = build_wave_1d_ja(n, t, 1e-6);
  const CMat u = register_evolution(n, t);
  for (unsigned seed : {1u, 2u}) {
    const CVec psi = random_field(16, seed);
    const RunResult r = run(ev.full, StateVector::from_amplitudes(psi));
    EXPECT_GE(fidelity(r.state.amplitudes, u * psi), 1.0 - 1e-5);
  }
  const EvolutionCircuit id = build_wave_1d_ja(n, 0.0, 1e-8);
  EXPECT_LT((block_matrix(id.full) * id.block.scale - CMat::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Wave, OneDimensionalDftIsExact) {
  for (int n : {2, 3}) {
    for (double t : {0.1, 0.9}) {
      const EvolutionCircuit ev = build_wave_1d_dft(n, t);
      const CMat got = block_matrix(ev.full) * ev.block.scale;
      EXPECT_LT((got - register_evolution(n, t)).cwiseAbs().maxCoeff(), 1e-10) << n << " " << t;
    }
  }
}

TEST(Wave, DftCircuitEvolvesEncodedFields) {
  const int n = 3;
  GridSpec g{1, n};
  const double v = 1.0, t = 0.13;
  const CMat h = wave_hamiltonian(gamma_ternary_tree(1), g, v);
  const CVec f = zero_mean(random_field(8, 21)), dtf = zero_mean(random_field(8, 22));
  const WaveEncoding e = encode_initial(WaveVariant::A, 0, f, dtf, h, 1);
  const EvolutionCircuit ev = build_wave_1d_dft(n, v * t);
  const RunResult r = run(ev.full, StateVector::from_amplitudes(wave_to_register_layout(e.state, 1, g)));
  const CVec psi = wave_from_register_layout(r.state.amplitudes, 1, g);
  const PhaseFit fit = compare_up_to_phase(psi, evolve_wave_oracle(h, e.state, t));
  EXPECT_LT(fit.max_deviation, 1e-10);
  const WaveFields w = decode_wave(WaveVariant::A, 0, psi * std::polar(1.0, -fit.phase), h, 1, e.norm);
  EXPECT_LT((w.f - second_order_reference(g, v, f, dtf, t).first).norm(), 1e-8);
}

TEST(Wave, SmoothOneDimensionalCircuitIsExact) {
  const int n = 4;
  const double t = 0.3;
  const WaveSmoothCircuit c = build_wave_smooth(1, n, t, 0.0);
  EXPECT_EQ(c.wavenumber_space.num_ancilla, 0);
  const CMat u = circuit_unitary(c.wavenumber_space);
  const auto k = khat_diagonal(n);
  double err = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double z = i < 16 ? 1.0 : -1.0;
    err = std::max(err, std::abs(u(i, i) - std::polar(1.0, -2.0 * kPi * t * z * k[static_cast<std::size_t>(i % 16)])));
  }
  EXPECT_LT(err, 1e-12);
  EXPECT_LT((u - CMat(u.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Wave, SingleLayerIsExactWhenOneTermVanishes) {
  const int n = 3;
  const double t = 0.2;
  const WaveSmoothCircuit c = build_wave_smooth(2, n, t, t);
  EXPECT_EQ(c.layers, 1);
  const CMat u = circuit_unitary(c.wavenumber_space);
  const GammaSet gam = gamma_ternary_tree(2);
  // Second register at khat = 0, i.e. register value N / 2.
  for (int k1 = 0; k1 < 8; ++k1) {
    const Eigen::Index i = k1 * 8 + 4;
    CMat block(2, 2);
    for (int r = 0; r < 2; ++r) {
      for (int s = 0; s < 2; ++s) block(r, s) = u(r * 64 + i, s * 64 + i);
    }
    EXPECT_LT((block - wave_mode_evolution(gam, {k1 - 4.0, 0.0}, t)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Wave, TrotterErrorShrinksLinearlyInStep) {
  const double t = 0.5;
  std::vector<double> err;
  for (double tau : {0.05, 0.025, 0.0125, 0.00625}) {
    err.push_back(wave_trotter_error(2, 3, t, tau, 2));
    std::printf("tau=%g error=%.6g literal_bound=%.6g\n", tau, err.back(), tau * tau * 4.0 * (t / tau));
  }
  // First order once the step resolves the largest rotation.
  EXPECT_NEAR(err[2] / err[3], 2.0, 0.2);
  // Bound with the 2 pi scale of the generators restored.
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double tau = 0.05 / std::ldexp(1.0, static_cast<int>(i));
    EXPECT_LE(err[i], tau * t * 4.0 * 4.0 * kPi * kPi);
  }
}

TEST(Wave, BlockEncodingIsProportionalToShiftedHamiltonian) {
  for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {1, 3}, {5, 1}}) {
    const WaveBlockEncoding w = build_wave_block_encoding(d, n);
    const CMat b = block_matrix(w.block.circuit);
    const CMat target = wave_shifted_hamiltonian(w.gammas, n);
    EXPECT_LT((b - w.inverse_constant * target).cwiseAbs().maxCoeff(), 1e-10) << d;
    Eigen::SelfAdjointEigenSolver<CMat> es(target);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_LE(es.eigenvalues().maxCoeff(), 1.0 + 1e-10);
    EXPECT_LE(w.inverse_constant, 1.0 + 1e-12);
    EXPECT_EQ(w.identity_sign_flipped, d == 5);
  }
}

TEST(Wave, BlockEncodingAnglesMatchClosedForms) {
  const double phi2 = 2.0 * std::acos(std::sqrt(std::sqrt(2.0) / (2.0 + std::sqrt(2.0))));
  const double phi3 = 2.0 * std::acos(std::sqrt(2.0 / std::sqrt(3.0) - 1.0));
  EXPECT_NEAR(build_wave_block_encoding(2, 1).prepare_angle, phi2, 1e-14);
  EXPECT_NEAR(build_wave_block_encoding(3, 1).prepare_angle, phi3, 1e-14);
}

TEST(Wave, ShiftedHamiltonianExtremesAtNyquist) {
  const int n = 2;
  const CMat h = wave_shifted_hamiltonian(gamma_ternary_tree(2), n);
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  EXPECT_NEAR(es.eigenvalues().minCoeff(), 0.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues().maxCoeff(), 1.0, 1e-12);
  // Both extremes live on the mode k1 = k2 = -N/2 (register value 0).
  const CMat mode = h({0, 16}, {0, 16});
  Eigen::SelfAdjointEigenSolver<CMat> m(mode);
  EXPECT_NEAR(m.eigenvalues()(0), 0.0, 1e-12);
  EXPECT_NEAR(m.eigenvalues()(1), 1.0, 1e-12);
}

TEST(Wave, CensusMatchesTableRows) {
  const WaveCensus c = wave_gate_census(3, 5);
  ASSERT_EQ(c.rows.size(), 3u);
  EXPECT_EQ(c.rows[0].count, 6);
  EXPECT_EQ(c.rows[1].count, 30);
  EXPECT_EQ(c.rows[2].count, 6);
  EXPECT_LE(c.rows[0].max_pauli_weight, 1);
  for (int d = 1; d <= 6; ++d) {
    for (int n : {1, 3}) {
      const WaveCensus w = wave_gate_census(d, n);
      EXPECT_EQ(w.rows[0].count, 2 * d);
      EXPECT_EQ(w.rows[1].count, 2 * d * n);
      EXPECT_EQ(w.rows[2].count, 2 * d);
      const int q = 1 + static_cast<int>(std::ceil(std::log2(2.0 * d)));
      EXPECT_EQ(w.rows[0].controls, q);
      EXPECT_EQ(w.table_applies, d > 1);
    }
  }
  EXPECT_EQ(c.csv().substr(0, 6), "number");
}

}  // namespace
}  // namespace qpde
