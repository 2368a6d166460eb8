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

#include "qpde/lindblad.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qpde/blocks.hpp"
#include "qpde/oracle.hpp"

namespace qpde {

namespace {

// Density matrices stay dense; the ancilla doubles the dimension.
constexpr int kMaxLindbladQubits = 11;

void check_size(const GridSpec& grid) {
  grid.validate();
  require(grid.qubits() + 1 <= kMaxLindbladQubits, "grid too large for density-matrix simulation");
}

}  // namespace

DiagonalEncoding DiagonalEncoding::from_values(const std::vector<double>& f, GridSpec grid) {
  grid.convention = GridConvention::UnitInterval;
  check_size(grid);
  require(f.size() == grid.size(), "value count does not match grid");
  double sum = 0.0;
  for (double v : f) {
    require(v >= 0.0, "diagonal encoding needs non-negative values");
    sum += v;
  }
  require(std::abs(sum - 1.0) <= 1e-10, "diagonal encoding needs values summing to 1");
  RVec diag(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) diag(static_cast<Eigen::Index>(i)) = f[i];
  DiagonalEncoding e;
  e.grid = grid;
  e.rho = DensityMatrix::from_matrix(diag.cast<cplx>().asDiagonal());
  return e;
}

std::vector<double> DiagonalEncoding::values() const {
  std::vector<double> f(static_cast<std::size_t>(rho.rho.rows()));
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = rho.rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  return f;
}

double DiagonalEncoding::off_diagonal_mass() const {
  CMat off = rho.rho;
  off.diagonal().setZero();
  return off.cwiseAbs().sum();
}

CMat JumpOperator::matrix(const GridSpec& grid) const {
  const CMat s = oracle::shift_matrix(grid, axis);
  return prefactor * (kind == JumpKind::Shift ? s : CMat(s.adjoint()));
}

std::vector<JumpOperator> heat_jumps(const GridSpec& grid, double diffusivity) {
  require(diffusivity >= 0.0, "diffusivity must be non-negative");
  const double c = std::sqrt(diffusivity) * static_cast<double>(grid.N());
  std::vector<JumpOperator> out;
  for (int a = 0; a < grid.d; ++a) {
    out.push_back({JumpKind::Shift, c, a});
    out.push_back({JumpKind::ShiftAdjoint, c, a});
  }
  return out;
}

std::vector<JumpOperator> advection_jumps(const GridSpec& grid, const std::vector<double>& speeds) {
  require(static_cast<int>(speeds.size()) == grid.d, "need one speed per dimension");
  std::vector<JumpOperator> out;
  for (int a = 0; a < grid.d; ++a) {
    const double r = speeds[static_cast<std::size_t>(a)];
    require(r >= 0.0, "advection jumps need non-negative speeds");
    out.push_back({JumpKind::Shift, std::sqrt(r * static_cast<double>(grid.N())), a});
  }
  return out;
}

CMat dissipator(const CMat& rho, const std::vector<JumpOperator>& jumps, const GridSpec& grid) {
  CMat out = CMat::Zero(rho.rows(), rho.cols());
  for (const auto& j : jumps) {
    const CMat l = j.matrix(grid);
    const CMat ll = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ll * rho + rho * ll);
  }
  return out;
}

CMat dilation_unitary_dense(const GridSpec& grid, const JumpOperator& jump, double tau) {
  check_size(grid);
  require(tau >= 0.0, "time step must be non-negative");
  const CMat l = jump.matrix(grid);
  CMat up = CMat::Zero(2, 2), down = CMat::Zero(2, 2);
  up(1, 0) = 1.0;
  down(0, 1) = 1.0;
  const CMat k = kron(l, up) + kron(CMat(l.adjoint()), down);
  return oracle::dense_expm(-kI * std::sqrt(tau) * k);
}

Circuit dilation_circuit(const GridSpec& grid, const JumpOperator& jump, double tau) {
  check_size(grid);
  require(tau >= 0.0, "time step must be non-negative");
  const int n = grid.n;
  const int anc = grid.qubits();
  const double nn = static_cast<double>(grid.N());
  const double alpha = std::sqrt(tau) * jump.prefactor;
  const double sign = jump.kind == JumpKind::Shift ? 1.0 : -1.0;
  // exp(-i theta Z_anc / 2) with theta = sign 2 pi khat / N, expanded with
  // khat = -(N/4) sum_b 2^-b Z_b - 1/2.
  ZPhaseOperator ladder;
  ladder.num_qubits = n + 1;
  for (int b = 0; b < n; ++b) ladder.terms.push_back({{b, n}, sign * kPi / 4.0 * std::ldexp(1.0, -b)});
  ladder.terms.push_back({{n}, sign * kPi / (2.0 * nn)});
  const Circuit rot = phase_circuit(ladder);

  Circuit inner(n, 1);
  std::vector<int> local(static_cast<std::size_t>(n + 1));
  for (int q = 0; q <= n; ++q) local[static_cast<std::size_t>(q)] = q;
  inner.append(rot.inverse(), local);
  inner.add(make_gate({n}, oracle::dense_expm(-kI * alpha * pauli_matrix('X')), {}, "Rx"));
  inner.append(rot, local);

  const Circuit f = build_shifted_qft(n, ShiftSpec::centered(n));
  std::vector<int> reg;
  for (int b = 0; b < n; ++b) reg.push_back(jump.axis * n + b);
  std::vector<int> map = reg;
  map.push_back(anc);
  Circuit c(grid.qubits(), 1);
  c.append(f.inverse(), reg);
  c.append(inner, map);
  c.append(f, reg);
  return c;
}

std::vector<CMat> dilation_kraus(const GridSpec& grid, const JumpOperator& jump, double tau) {
  const CMat u = circuit_unitary(dilation_circuit(grid, jump, tau));
  const auto size = static_cast<Eigen::Index>(grid.size());
  std::vector<Eigen::Index> reg(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    reg[i] = static_cast<Eigen::Index>(position_register_index(i, grid));
  }
  std::vector<CMat> kraus(2, CMat(size, size));
  for (int a = 0; a < 2; ++a) {
    for (Eigen::Index i = 0; i < size; ++i) {
      for (Eigen::Index j = 0; j < size; ++j) {
        kraus[static_cast<std::size_t>(a)](i, j) = u(2 * reg[static_cast<std::size_t>(i)] + a,
                                                     2 * reg[static_cast<std::size_t>(j)]);
      }
    }
  }
  return kraus;
}

namespace {

DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<CMat>& kraus) {
  CMat out = CMat::Zero(rho.rho.rows(), rho.rho.cols());
  for (const auto& k : kraus) out += k * rho.rho * k.adjoint();
  return DensityMatrix::from_matrix(out);
}

}  // namespace

DensityMatrix dilation_step(const DensityMatrix& rho, const GridSpec& grid, const JumpOperator& jump, double tau) {
  require(static_cast<std::size_t>(rho.rho.rows()) == grid.size(), "density matrix does not match grid");
  return apply_kraus(rho, dilation_kraus(grid, jump, tau));
}

LindbladRun evolve_lindblad(const DiagonalEncoding& initial, const std::vector<JumpOperator>& jumps, double t,
                            int steps) {
  require(steps >= 1, "need at least one step");
  require(t >= 0.0, "time must be non-negative");
  const double tau = t / steps;
  std::vector<std::vector<CMat>> kraus;
  for (const auto& j : jumps) kraus.push_back(dilation_kraus(initial.grid, j, tau));
  LindbladRun run;
  run.state = initial;
  run.steps = steps;
  run.trajectory.push_back(initial.values());
  auto record = [&run] {
    const auto f = run.state.values();
    run.min_diagonal = std::min(run.min_diagonal, *std::min_element(f.begin(), f.end()));
    run.max_trace_deviation = std::max(run.max_trace_deviation, std::abs(run.state.rho.trace() - 1.0));
  };
  run.min_diagonal = *std::min_element(run.trajectory[0].begin(), run.trajectory[0].end());
  for (int s = 0; s < steps; ++s) {
    for (const auto& k : kraus) {
      run.state.rho = apply_kraus(run.state.rho, k);
      record();
    }
    run.max_off_diagonal = std::max(run.max_off_diagonal, run.state.off_diagonal_mass());
    run.trajectory.push_back(run.state.values());
  }
  return run;
}

LindbladRun evolve_lindblad_heat(const std::vector<double>& f0, const GridSpec& grid, double diffusivity,
                                 double t, int steps) {
  const DiagonalEncoding e = DiagonalEncoding::from_values(f0, grid);
  return evolve_lindblad(e, heat_jumps(e.grid, diffusivity), t, steps);
}

std::vector<double> classical_heat(const std::vector<double>& f0, const GridSpec& grid, double diffusivity,
                                   double t) {
  require(f0.size() == grid.size(), "value count does not match grid");
  CVec v(static_cast<Eigen::Index>(f0.size()));
  for (std::size_t i = 0; i < f0.size(); ++i) v(static_cast<Eigen::Index>(i)) = f0[i];
  const CVec out = oracle::dense_expm(t * diffusivity * oracle::laplacian(grid)) * v;
  std::vector<double> f(f0.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = out(static_cast<Eigen::Index>(i)).real();
  return f;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  require(a.size() == b.size(), "size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

StepCalibration calibrate_heat_steps(const std::vector<double>& f0, const GridSpec& grid, double diffusivity,
                                     double t, double tol, int start, int max_steps) {
  require(tol > 0.0 && start >= 1, "calibration needs tol > 0 and start >= 1");
  const auto want = classical_heat(f0, grid, diffusivity, t);
  for (int steps = start; steps <= max_steps; steps *= 2) {
    const LindbladRun run = evolve_lindblad_heat(f0, grid, diffusivity, t, steps);
    const double dist = l1_distance(run.state.values(), want);
    if (dist <= tol) return {steps, dist};
  }
  throw BudgetExceeded(fmt::format("no step count up to {} reaches L1 distance {}", max_steps, tol));
}

std::string trajectory_csv(const LindbladRun& run) {
  std::string out = "step,l,f\n";
  for (std::size_t s = 0; s < run.trajectory.size(); ++s) {
    for (std::size_t l = 0; l < run.trajectory[s].size(); ++l) {
      out += fmt::format("{},{},{:.17g}\n", s, l, run.trajectory[s][l]);
    }
  }
  return out;
}

}  // namespace qpde
