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

#include "qpde/wave.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qpde/oracle.hpp"

namespace qpde {

namespace {

int ceil_log(int base, int x) {
  int r = 0;
  long p = 1;
  while (p < x) {
    p *= base;
    ++r;
  }
  return r;
}

std::size_t block_size(const GridSpec& grid) { return grid.size(); }

}  // namespace

GammaSet gamma_ternary_tree(int d) {
  require(d >= 1, "gamma set needs d >= 1");
  GammaSet g;
  g.d = d;
  if (d == 1) {
    g.qubits = 1;
    g.strings.push_back({{0}, "X"});
    g.max_weight = 1;
    return g;
  }
  const int q = d % 2 == 1 ? (d - 1) / 2 : d / 2;
  g.qubits = q;
  const char labels[3] = {'X', 'Y', 'Z'};
  for (int node = 0; node < q && static_cast<int>(g.strings.size()) < d; ++node) {
    for (int e = 0; e < 3 && static_cast<int>(g.strings.size()) < d; ++e) {
      const int child = 3 * node + 1 + e;
      if (child < q) continue;
      // Walk up from `node`, collecting the edge label used at each ancestor.
      PauliString p;
      p.qubits.push_back(node);
      p.ops.push_back(labels[e]);
      for (int c = node; c > 0; c = (c - 1) / 3) {
        p.qubits.push_back((c - 1) / 3);
        p.ops.push_back(labels[(c - 1) % 3]);
      }
      std::vector<std::size_t> order(p.qubits.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.qubits[a] < p.qubits[b]; });
      PauliString sorted;
      for (std::size_t i : order) {
        sorted.qubits.push_back(p.qubits[i]);
        sorted.ops.push_back(p.ops[i]);
      }
      g.max_weight = std::max(g.max_weight, sorted.weight());
      g.strings.push_back(std::move(sorted));
    }
  }
  return g;
}

CMat sqrt_minus_laplacian(const GridSpec& grid, int axis) {
  grid.validate();
  require(axis >= 0 && axis < grid.d, "axis out of range");
  const double nn = static_cast<double>(grid.N());
  const auto size = static_cast<Eigen::Index>(grid.size());
  CMat o(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    CVec e = CVec::Zero(size);
    e(j) = 1.0;
    o.col(j) = oracle::fft_evolve(e, grid, [&](const std::vector<double>& k) {
      return cplx(2.0 * nn * std::sin(kPi * k[static_cast<std::size_t>(axis)] / nn), 0.0);
    });
  }
  return o;
}

CMat wave_hamiltonian(const GammaSet& gammas, const GridSpec& grid, double speed) {
  require(gammas.d == grid.d, "gamma set and grid dimensions differ");
  const auto k = static_cast<Eigen::Index>(dim_of(gammas.qubits));
  const auto s = static_cast<Eigen::Index>(block_size(grid));
  require(k * s <= 4096, "dense wave Hamiltonian limited to 4096 rows");
  CMat h = CMat::Zero(k * s, k * s);
  for (int a = 0; a < grid.d; ++a) {
    h += speed * kron(gammas.strings[static_cast<std::size_t>(a)].full_matrix(gammas.qubits),
                      sqrt_minus_laplacian(grid, a));
  }
  return h;
}

CVec wave_to_register_layout(const CVec& natural, int gamma_qubits, const GridSpec& grid) {
  const auto s = static_cast<Eigen::Index>(grid.size());
  const auto k = static_cast<Eigen::Index>(dim_of(gamma_qubits));
  require(natural.size() == k * s, "wave state size mismatch");
  CVec out(natural.size());
  for (Eigen::Index z = 0; z < k; ++z) out.segment(z * s, s) = encode_positions(natural.segment(z * s, s), grid);
  return out;
}

CVec wave_from_register_layout(const CVec& registers, int gamma_qubits, const GridSpec& grid) {
  const auto s = static_cast<Eigen::Index>(grid.size());
  const auto k = static_cast<Eigen::Index>(dim_of(gamma_qubits));
  require(registers.size() == k * s, "wave state size mismatch");
  CVec out(registers.size());
  for (Eigen::Index z = 0; z < k; ++z) out.segment(z * s, s) = decode_positions(registers.segment(z * s, s), grid);
  return out;
}

CMat wave_operator_to_register_layout(const CMat& natural, int gamma_qubits, const GridSpec& grid) {
  const auto s = static_cast<Eigen::Index>(grid.size());
  const auto k = static_cast<Eigen::Index>(dim_of(gamma_qubits));
  require(natural.rows() == k * s && natural.cols() == k * s, "wave operator size mismatch");
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(k * s));
  for (Eigen::Index z = 0; z < k; ++z) {
    for (Eigen::Index i = 0; i < s; ++i) {
      perm[static_cast<std::size_t>(z * s + i)] =
          z * s + static_cast<Eigen::Index>(position_register_index(static_cast<std::size_t>(i), grid));
    }
  }
  CMat out(natural.rows(), natural.cols());
  for (Eigen::Index i = 0; i < natural.rows(); ++i) {
    for (Eigen::Index j = 0; j < natural.cols(); ++j) {
      out(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = natural(i, j);
    }
  }
  return out;
}

CVec WaveEncoding::block(int sector) const {
  const auto k = static_cast<Eigen::Index>(dim_of(gamma_qubits));
  require(sector >= 0 && sector < k, "gamma sector out of range");
  const Eigen::Index s = state.size() / k;
  return state.segment(sector * s, s);
}

namespace {

CVec embed(int zeta, const CVec& v, int gamma_qubits) {
  const auto k = static_cast<Eigen::Index>(dim_of(gamma_qubits));
  require(zeta >= 0 && zeta < k, "zeta out of range");
  CVec out = CVec::Zero(k * v.size());
  out.segment(zeta * v.size(), v.size()) = v;
  return out;
}

// Columns map (f, dtf) to the encoded state.
CMat encoding_map(WaveVariant variant, int zeta, const CMat& h, int gamma_qubits) {
  const auto k = static_cast<Eigen::Index>(dim_of(gamma_qubits));
  const Eigen::Index s = h.rows() / k;
  CMat e = CMat::Zero(h.rows(), s);
  e.block(zeta * s, 0, s, s) = CMat::Identity(s, s);
  CMat m(h.rows(), 2 * s);
  if (variant == WaveVariant::A) {
    m.leftCols(s) = -kI * h * e;
    m.rightCols(s) = e;
  } else {
    m.leftCols(s) = e;
    m.rightCols(s) = kI * oracle::dense_pinv(h, 1e-10) * e;
  }
  return m;
}

}  // namespace

WaveEncoding encode_initial(WaveVariant variant, int zeta, const CVec& f, const CVec& dtf,
                            const CMat& hamiltonian, int gamma_qubits) {
  require(f.size() == dtf.size(), "f and dtf sizes differ");
  require(hamiltonian.rows() == static_cast<Eigen::Index>(dim_of(gamma_qubits)) * f.size(),
          "Hamiltonian does not match the fields");
  WaveEncoding w;
  w.variant = variant;
  w.zeta = zeta;
  w.gamma_qubits = gamma_qubits;
  const CVec ef = embed(zeta, f, gamma_qubits);
  const CVec ed = embed(zeta, dtf, gamma_qubits);
  CVec psi;
  if (variant == WaveVariant::A) {
    psi = ed - kI * (hamiltonian * ef);
  } else {
    const CMat hp = oracle::dense_pinv(hamiltonian, 1e-10);
    // Mass of dtf that the pseudo-inverse would drop.
    const CVec kept = hamiltonian * (hp * ed);
    const double lost = (ed - kept).norm();
    if (lost > 1e-10 * std::max(1.0, ed.norm())) {
      throw InvalidArgument(fmt::format("dtf has kernel component {:.3e}; variant B cannot encode it", lost));
    }
    psi = ef + kI * (hp * ed);
  }
  w.norm = psi.norm();
  require(w.norm > 0.0, "encoded state is zero");
  w.state = psi / w.norm;
  return w;
}

WaveFields decode_wave(WaveVariant variant, int zeta, const CVec& state, const CMat& hamiltonian,
                       int gamma_qubits, double norm) {
  const CMat m = encoding_map(variant, zeta, hamiltonian, gamma_qubits);
  const CVec x = oracle::dense_pinv(m, 1e-10) * (norm * state);
  const Eigen::Index s = m.cols() / 2;
  return {x.head(s), x.tail(s)};
}

CVec evolve_wave_oracle(const CMat& hamiltonian, const CVec& psi0, double time) {
  return oracle::dense_expm(-kI * time * hamiltonian) * psi0;
}

namespace {

// Unitary on (ancilla, system) whose ancilla-|0> block is phase * g for a
// Hermitian g with norm at most one. Square roots are taken per eigenvalue.
CMat dilation(const CMat& g, cplx phase) {
  Eigen::SelfAdjointEigenSolver<CMat> es(g);
  const CMat& v = es.eigenvectors();
  const RVec lam = es.eigenvalues().cwiseMax(-1.0).cwiseMin(1.0);
  const RVec comp = (1.0 - lam.array().square()).sqrt().matrix();
  const CMat m = phase * (v * lam.cast<cplx>().asDiagonal() * v.adjoint());
  const CMat r = v * comp.cast<cplx>().asDiagonal() * v.adjoint();
  const Eigen::Index s = g.rows();
  CMat u(2 * s, 2 * s);
  u.topLeftCorner(s, s) = m;
  u.topRightCorner(s, s) = r;
  u.bottomLeftCorner(s, s) = r;
  u.bottomRightCorner(s, s) = -m.adjoint();
  return u;
}

}  // namespace

Circuit wave_state_prep_circuit(WaveVariant variant, int zeta, const CVec& f, const CVec& dtf,
                                const CMat& hamiltonian, int gamma_qubits, const GridSpec& grid) {
  const int sys = gamma_qubits + grid.qubits();
  const CMat h_reg = wave_operator_to_register_layout(hamiltonian, gamma_qubits, grid);
  // Branch 0 carries the unmodified field, branch 1 the one multiplied by m.
  const CVec& plain = variant == WaveVariant::A ? dtf : f;
  const CVec& mapped = variant == WaveVariant::A ? f : dtf;
  // The mapped branch gets phase * g / s with g Hermitian.
  CMat g = variant == WaveVariant::A ? h_reg : oracle::dense_pinv(h_reg, 1e-10);
  g = (g + g.adjoint()).eval() / 2.0;
  const cplx phase = variant == WaveVariant::A ? -kI : kI;
  const double s = Eigen::SelfAdjointEigenSolver<CMat>(g, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
  require(s > 0.0, "Hamiltonian is zero");
  g /= s;

  const double a0 = plain.norm();
  const double a1 = s * mapped.norm();
  require(a0 + a1 > 0.0, "both fields are zero");
  Circuit c(sys, 2);
  const int sum = sys, dil = sys + 1;
  std::vector<int> system(static_cast<std::size_t>(sys));
  for (int q = 0; q < sys; ++q) system[static_cast<std::size_t>(q)] = q;
  c.add(make_gate({sum}, ry(2.0 * std::atan2(a1, a0)), {}, "Ry"));
  if (a0 > 0.0) {
    const CVec v = wave_to_register_layout(embed(zeta, plain, gamma_qubits), gamma_qubits, grid);
    c.add(make_gate(system, state_preparation_unitary(v / v.norm()), {{sum, 0}}, "Prep"));
  }
  if (a1 > 0.0) {
    const CVec v = wave_to_register_layout(embed(zeta, mapped, gamma_qubits), gamma_qubits, grid);
    c.add(make_gate(system, state_preparation_unitary(v / v.norm()), {{sum, 1}}, "Prep"));
    std::vector<int> targets{dil};
    targets.insert(targets.end(), system.begin(), system.end());
    c.add(make_gate(targets, dilation(g, phase), {{sum, 1}}, variant == WaveVariant::A ? "U" : "V"));
  }
  c.add(make_gate({sum}, hadamard(), {}, "H"));
  return c;
}

namespace {

// exp(i pi lhat / N) controlled by the last qubit, on n + 1 qubits with the
// gamma qubit most significant.
Circuit build_U_lhat(int n) {
  const double nn = std::ldexp(1.0, n);
  ZPhaseOperator g = khat_operator(n + 1, kPi / nn);
  g.constant += kPi / 2.0;
  return controlled_phase_circuit(g);
}

Circuit wrap_1d(const BlockEncoding& block, int n) {
  GridSpec grid{1, n};
  const Circuit f = tensor_qft_d(grid, ShiftSpec::centered(n));
  std::vector<int> fmap(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) fmap[static_cast<std::size_t>(q)] = q + 1;
  std::vector<int> all(static_cast<std::size_t>(block.circuit.total_qubits()));
  for (std::size_t q = 0; q < all.size(); ++q) all[q] = static_cast<int>(q);
  Circuit c(block.circuit.num_system, block.circuit.num_ancilla);
  c.add(make_gate({0}, hadamard(), {}, "H"));
  c.append(f.inverse(), fmap);
  c.append(block.circuit, all);
  c.add(make_gate({0}, hadamard(), {}, "H"));
  c.append(f, fmap);
  return c;
}

}  // namespace

EvolutionCircuit build_wave_1d_ja(int n, double scaled_time, double epsilon) {
  require(n >= 1, "n must be positive");
  const double nn = std::ldexp(1.0, n);
  EvolutionCircuit out;
  out.series.push_back(jacobi_anger_coeffs(-2.0 * scaled_time * nn, epsilon));
  out.series[0].unit = kPi / nn;
  out.series[0].variable = "pi lhat / N";
  out.block = realize_fourier_series(out.series[0], build_U_lhat(n));
  out.full = wrap_1d(out.block, n);
  out.route = "wave-1d-jacobi-anger";
  return out;
}

EvolutionCircuit build_wave_1d_dft(int n, double scaled_time) {
  require(n >= 1, "n must be positive");
  const double nn = std::ldexp(1.0, n);
  // lhat takes 2N values and the target has period 2N in it.
  std::vector<cplx> values;
  for (double l : lhat_diagonal(n)) values.push_back(std::polar(1.0, -2.0 * scaled_time * nn * std::sin(kPi * l / nn)));
  EvolutionCircuit out;
  out.series.push_back(dft_series_of_diagonal(values, -nn / 2.0));
  out.block = realize_fourier_series(out.series[0], build_U_lhat(n));
  out.full = wrap_1d(out.block, n);
  out.route = "wave-1d-dft";
  return out;
}

namespace {

CMat pauli_exponential(const PauliString& p, double angle) {
  const CMat m = p.local_matrix();
  return std::cos(angle) * CMat::Identity(m.rows(), m.cols()) + kI * std::sin(angle) * m;
}

}  // namespace

WaveSmoothCircuit build_wave_smooth(int d, int n, double scaled_time, double tau) {
  require(d >= 1 && n >= 1, "d and n must be positive");
  WaveSmoothCircuit out;
  out.gammas = gamma_ternary_tree(d);
  const int q = out.gammas.qubits;
  GridSpec grid{d, n};
  const int sys = q + grid.qubits();
  Circuit w(sys);
  if (d == 1) {
    // -2 pi t Z (x) khat = pi t Z + sum_b pi t 2^{n-1-b} Z Z_b.
    ZPhaseOperator g;
    g.num_qubits = n + 1;
    g.terms.push_back({{0}, kPi * scaled_time});
    for (int b = 0; b < n; ++b) g.terms.push_back({{0, b + 1}, kPi * scaled_time * std::ldexp(1.0, n - 1 - b)});
    w = phase_circuit(g);
    out.layers = 1;
  } else {
    require(tau > 0.0, "Trotter step must be positive");
    const double ratio = scaled_time / tau;
    out.layers = static_cast<int>(std::lround(ratio));
    require(std::abs(ratio - out.layers) < 1e-9, "Trotter step must divide the time");
    for (int layer = 0; layer < out.layers; ++layer) {
      for (int a = 0; a < d; ++a) {
        const PauliString& gam = out.gammas.strings[static_cast<std::size_t>(a)];
        w.add(make_gate(gam.qubits, pauli_exponential(gam, kPi * tau), {}, "Ugamma"));
        for (int z = 0; z < n; ++z) {
          PauliString p = gam;
          p.qubits.push_back(q + a * n + z);
          p.ops.push_back('Z');
          w.add(make_gate(p.qubits, pauli_exponential(p, kPi * tau * std::ldexp(1.0, n - z - 1)), {}, "UgammaZ"));
        }
      }
    }
  }
  out.wavenumber_space = w;
  BlockEncoding be;
  be.circuit = w;
  out.full = d == 1 ? wrap_1d(be, n) : wrap_in_fourier(be, grid, q);
  return out;
}

CMat wave_shifted_hamiltonian(const GammaSet& gammas, int n) {
  const int d = gammas.d;
  const long nn = 1L << n;
  const auto k = static_cast<Eigen::Index>(dim_of(gammas.qubits));
  const auto s = static_cast<Eigen::Index>(dim_of(d * n));
  require(k * s <= 4096, "dense shifted Hamiltonian limited to 4096 rows");
  const auto kh = khat_diagonal(n);
  CMat h = CMat::Zero(k * s, k * s);
  for (int a = 0; a < d; ++a) {
    CVec diag(s);
    for (Eigen::Index i = 0; i < s; ++i) {
      const long digit = (i >> ((d - 1 - a) * n)) & (nn - 1);
      diag(i) = std::sin(kPi * kh[static_cast<std::size_t>(digit)] / static_cast<double>(nn));
    }
    h += kron(gammas.strings[static_cast<std::size_t>(a)].full_matrix(gammas.qubits), CMat(diag.asDiagonal()));
  }
  const double root = std::sqrt(static_cast<double>(d));
  return (h + root * CMat::Identity(k * s, k * s)) / (2.0 * root);
}

WaveBlockEncoding build_wave_block_encoding(int d, int n) {
  require(d >= 1 && n >= 1, "d and n must be positive");
  WaveBlockEncoding out;
  out.gammas = gamma_ternary_tree(d);
  const int q = out.gammas.qubits;
  const int sys = q + d * n;
  const int m = ceil_log(2, 2 * d);
  out.select_qubits = m;
  const int top = sys;
  const double branches = std::ldexp(1.0, m);
  const double unused = branches - 2.0 * d;
  const double root = std::sqrt(static_cast<double>(d));
  // Identity weight needed beyond what the unused select branches supply.
  const double excess = 2.0 * root - unused;
  out.identity_sign_flipped = excess < 0.0;
  const double cos2 = std::abs(excess) / (std::abs(excess) + branches);
  out.prepare_angle = 2.0 * std::acos(std::sqrt(cos2));
  const double sin2 = 1.0 - cos2;
  out.inverse_constant = 4.0 * root * sin2 / branches;

  BlockEncoding& be = out.block;
  be.circuit = Circuit(sys, 1 + m);
  be.ancilla_count = 1 + m;
  be.scale = 1.0 / out.inverse_constant;
  Circuit& c = be.circuit;
  c.add(make_gate({top}, ry(out.prepare_angle), {}, "Ry"));
  for (int b = 0; b < m; ++b) c.add(make_gate({top + 1 + b}, hadamard(), {}, "H"));
  const double nn = std::ldexp(1.0, n);
  for (int j = 0; j < 2 * d; ++j) {
    std::vector<Control> ctl{{top, 1}};
    for (int b = 0; b < m; ++b) ctl.push_back({top + 1 + b, (j >> (m - 1 - b)) & 1});
    const int a = j / 2;
    // sin x = (-i/2) e^{ix} + (i/2) e^{-ix}, and -i P = exp(-i pi/2 P).
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    const PauliString& gam = out.gammas.strings[static_cast<std::size_t>(a)];
    c.add(make_gate(gam.qubits, pauli_exponential(gam, -sign * kPi / 2.0), ctl, "CPauli"));
    for (int z = 0; z < n; ++z) {
      c.add(make_gate({q + a * n + z}, z_rotation(-sign * kPi * std::ldexp(1.0, -z - 2)), ctl, "CRz"));
    }
    // The scalar factor exp(-+ i pi / (2N)) as a phase on the top ancilla.
    std::vector<Control> sel(ctl.begin() + 1, ctl.end());
    c.add(make_gate({top}, phase_gate(-sign * kPi / (2.0 * nn)), sel, "CPhase"));
  }
  if (out.identity_sign_flipped) {
    CMat flip = CMat::Identity(2, 2);
    flip(0, 0) = -1.0;
    c.add(make_gate({top}, flip, {}, "Sign"));
  }
  for (int b = 0; b < m; ++b) c.add(make_gate({top + 1 + b}, hadamard(), {}, "H"));
  c.add(make_gate({top}, ry(-out.prepare_angle), {}, "Ry"));
  be.oracle_queries = static_cast<std::size_t>(2 * d);
  be.description = fmt::format("wave block encoding d={} n={}", d, n);
  return out;
}

long WaveCensus::total_cnots() const {
  long t = 0;
  for (const auto& r : rows) t += r.count * r.cnots_each;
  return t;
}

std::string WaveCensus::csv() const {
  std::string s = "number,gate,controls,max_pauli_weight,cnots_each,cnots_total\n";
  for (const auto& r : rows) {
    s += fmt::format("{},{},{},{},{},{}\n", r.count, r.gate, r.controls, r.max_pauli_weight, r.cnots_each,
                     r.count * r.cnots_each);
  }
  return s;
}

WaveCensus wave_gate_census(int d, int n) {
  const WaveBlockEncoding w = build_wave_block_encoding(d, n);
  const int q = 1 + w.select_qubits;
  WaveCensus census;
  census.d = d;
  census.n = n;
  census.table_applies = d > 1;
  CensusRow rot{"controlled_pauli_rotation", 0, q, 0, 0};
  CensusRow rz{"controlled_z_rotation", 0, q, 1, 2L * q};
  CensusRow ph{"controlled_phase", 0, q, 0, 2L * (q - 1) * (q - 1)};
  for (const auto& g : w.block.circuit.gates) {
    if (g.label == "CPauli") {
      require(static_cast<int>(g.controls.size()) == q, "unexpected control count");
      ++rot.count;
      rot.max_pauli_weight = std::max(rot.max_pauli_weight, static_cast<int>(g.targets.size()));
    } else if (g.label == "CRz") {
      require(static_cast<int>(g.controls.size()) == q, "unexpected control count");
      ++rz.count;
    } else if (g.label == "CPhase") {
      // Target plus controls: a phase conditioned on all q control qubits.
      require(static_cast<int>(g.controls.size()) + 1 == q, "unexpected control count");
      ++ph.count;
    }
  }
  rot.cnots_each = 2L * (rot.max_pauli_weight - 1) + rz.cnots_each;
  census.rows = {rot, rz, ph};
  return census;
}

CMat wave_mode_evolution(const GammaSet& gam, const std::vector<double>& k, double t) {
  const auto dim = static_cast<Eigen::Index>(1) << gam.qubits;
  CMat h = CMat::Zero(dim, dim);
  for (std::size_t a = 0; a < k.size(); ++a) h += 2.0 * kPi * k[a] * gam.strings[a].full_matrix(gam.qubits);
  return oracle::dense_expm(-kI * t * h);
}

double wave_trotter_error(int d, int n, double t, double tau, int kmax) {
  const WaveSmoothCircuit c = build_wave_smooth(d, n, t, tau);
  const CMat u = circuit_unitary(c.wavenumber_space);
  const auto kh = khat_diagonal(n);
  const long nn = 1L << n;
  const auto grid = static_cast<Eigen::Index>(1) << (d * n);
  const auto dim = static_cast<Eigen::Index>(1) << c.gammas.qubits;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < grid; ++i) {
    std::vector<double> k;
    bool inside = true;
    for (int a = 0; a < d; ++a) {
      k.push_back(kh[static_cast<std::size_t>((i >> ((d - 1 - a) * n)) & (nn - 1))]);
      inside = inside && std::abs(k.back()) <= kmax;
    }
    if (!inside) continue;
    CMat block(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index s = 0; s < dim; ++s) block(r, s) = u(r * grid + i, s * grid + i);
    }
    worst = std::max(worst, (block - wave_mode_evolution(c.gammas, k, t)).operatorNorm());
  }
  return worst;
}

}  // namespace qpde
