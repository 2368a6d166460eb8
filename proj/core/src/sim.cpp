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

#include "qpde/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qpde {

namespace {

constexpr double kMinBranch = 1e-15;

std::size_t bit_of(int qubit, int n) { return std::size_t{1} << (n - 1 - qubit); }

bool is_unitary(const CMat& m, double tol) {
  const CMat prod = m.adjoint() * m;
  return (prod - CMat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_diagonal(const CMat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j && m(i, j) != cplx{0.0, 0.0}) return false;
    }
  }
  return true;
}

void check_qubits(const Gate& g, int n) {
  std::set<int> seen;
  for (int q : g.targets) {
    if (q < 0 || q >= n) throw InvalidArgument("gate target out of range");
    if (!seen.insert(q).second) throw InvalidArgument("repeated gate qubit");
  }
  for (const auto& c : g.controls) {
    if (c.qubit < 0 || c.qubit >= n) throw InvalidArgument("gate control out of range");
    if (!seen.insert(c.qubit).second) throw InvalidArgument("repeated gate qubit");
  }
}

}  // namespace

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  require(num_qubits >= 0 && num_qubits <= 30, "qubit count out of range");
  StateVector s;
  s.num_qubits = num_qubits;
  s.amplitudes = CVec::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
  require(index < dim_of(num_qubits), "basis index out of range");
  s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  s.norm_squared = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(const CVec& amps) {
  const auto size = static_cast<std::size_t>(amps.size());
  require(size > 0 && (size & (size - 1)) == 0, "amplitude count must be a power of two");
  StateVector s;
  s.num_qubits = 0;
  while (dim_of(s.num_qubits) < size) ++s.num_qubits;
  s.amplitudes = amps;
  s.refresh_norm();
  return s;
}

void StateVector::normalize() {
  refresh_norm();
  if (norm_squared <= 0.0) throw AnnihilatedBranch("cannot normalize a zero vector");
  amplitudes /= std::sqrt(norm_squared);
  refresh_norm();
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  DensityMatrix d;
  d.num_qubits = psi.num_qubits;
  d.rho = psi.amplitudes * psi.amplitudes.adjoint();
  return d;
}

DensityMatrix DensityMatrix::from_matrix(const CMat& m) {
  require(m.rows() == m.cols(), "density matrix must be square");
  DensityMatrix d;
  d.num_qubits = 0;
  while (dim_of(d.num_qubits) < static_cast<std::size_t>(m.rows())) ++d.num_qubits;
  require(dim_of(d.num_qubits) == static_cast<std::size_t>(m.rows()),
          "density matrix size must be a power of two");
  d.rho = m;
  return d;
}

Gate make_gate(std::vector<int> targets, CMat matrix, std::vector<Control> controls,
               std::string label) {
  const int k = static_cast<int>(targets.size());
  require(k >= 1 && k <= kMaxGateTargets, "gate must act on 1.." +
                                              std::to_string(kMaxGateTargets) + " targets");
  const auto d = static_cast<Eigen::Index>(dim_of(k));
  require(matrix.rows() == d && matrix.cols() == d, "gate matrix has the wrong shape");
  if (!is_unitary(matrix, 1e-12 * static_cast<double>(d))) {
    throw InvalidArgument("gate matrix is not unitary: " + label);
  }
  for (const auto& c : controls) require(c.value == 0 || c.value == 1, "control value must be 0 or 1");
  Gate g;
  g.targets = std::move(targets);
  g.diagonal = is_diagonal(matrix);
  g.matrix = std::move(matrix);
  g.controls = std::move(controls);
  g.label = std::move(label);
  std::set<int> seen;
  for (int q : g.targets) require(seen.insert(q).second, "repeated gate qubit");
  for (const auto& c : g.controls) require(seen.insert(c.qubit).second, "repeated gate qubit");
  return g;
}

void Circuit::add(Gate g) {
  check_qubits(g, total_qubits());
  gates.push_back(std::move(g));
}

void Circuit::append(const Circuit& other, const std::vector<int>& qubit_map) {
  require(static_cast<int>(qubit_map.size()) == other.total_qubits(), "qubit map size mismatch");
  const std::size_t offset = gates.size();
  for (const auto& g : other.gates) {
    Gate m = g;
    for (int& q : m.targets) q = qubit_map[static_cast<std::size_t>(q)];
    for (auto& c : m.controls) c.qubit = qubit_map[static_cast<std::size_t>(c.qubit)];
    add(std::move(m));
  }
  for (const auto& step : other.postselect_plan) {
    postselect_plan.push_back(
        {qubit_map[static_cast<std::size_t>(step.qubit)], step.outcome, step.after_gate + offset});
  }
  global_phase += other.global_phase;
}

void Circuit::postselect_now(int qubit, int outcome) {
  require(qubit >= num_system && qubit < total_qubits(), "only ancillas can be postselected");
  postselect_plan.push_back({qubit, outcome, gates.size()});
}

Circuit Circuit::inverse() const {
  require(postselect_plan.empty(), "cannot invert a circuit with postselection");
  Circuit inv(num_system, num_ancilla);
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate g = *it;
    g.matrix = it->matrix.adjoint();
    inv.gates.push_back(std::move(g));
  }
  inv.global_phase = -global_phase;
  return inv;
}

void apply_gate(StateVector& psi, const Gate& g) {
  const int n = psi.num_qubits;
  check_qubits(g, n);
  const int k = static_cast<int>(g.targets.size());
  const std::size_t dim = psi.dim();
  const std::size_t sub = dim_of(k);

  std::size_t target_mask = 0;
  std::vector<std::size_t> offsets(sub, 0);
  for (int i = 0; i < k; ++i) {
    const std::size_t b = bit_of(g.targets[static_cast<std::size_t>(i)], n);
    target_mask |= b;
    for (std::size_t m = 0; m < sub; ++m) {
      if ((m >> (k - 1 - i)) & 1U) offsets[m] |= b;
    }
  }
  std::size_t ctrl_mask = 0;
  std::size_t ctrl_val = 0;
  for (const auto& c : g.controls) {
    const std::size_t b = bit_of(c.qubit, n);
    ctrl_mask |= b;
    if (c.value == 1) ctrl_val |= b;
  }

  auto& a = psi.amplitudes;
  if (g.diagonal) {
    std::vector<cplx> diag(sub);
    for (std::size_t m = 0; m < sub; ++m) diag[m] = g.matrix(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & target_mask) != 0 || (i & ctrl_mask) != ctrl_val) continue;
      for (std::size_t m = 0; m < sub; ++m) a(static_cast<Eigen::Index>(i + offsets[m])) *= diag[m];
    }
  } else {
    CVec in(static_cast<Eigen::Index>(sub));
    CVec out(static_cast<Eigen::Index>(sub));
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & target_mask) != 0 || (i & ctrl_mask) != ctrl_val) continue;
      for (std::size_t m = 0; m < sub; ++m) in(static_cast<Eigen::Index>(m)) = a(static_cast<Eigen::Index>(i + offsets[m]));
      out.noalias() = g.matrix * in;
      for (std::size_t m = 0; m < sub; ++m) a(static_cast<Eigen::Index>(i + offsets[m])) = out(static_cast<Eigen::Index>(m));
    }
  }
  psi.refresh_norm();
}

void apply_gates(StateVector& psi, const Circuit& c) {
  require(psi.num_qubits == c.total_qubits(), "state and circuit sizes differ");
  for (const auto& g : c.gates) apply_gate(psi, g);
  psi.amplitudes *= std::polar(1.0, c.global_phase);
}

double project(StateVector& psi, int qubit, int outcome) {
  require(qubit >= 0 && qubit < psi.num_qubits, "projected qubit out of range");
  const double before = psi.amplitudes.squaredNorm();
  const std::size_t b = bit_of(qubit, psi.num_qubits);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const int bit = (i & b) ? 1 : 0;
    if (bit != outcome) psi.amplitudes(static_cast<Eigen::Index>(i)) = 0.0;
  }
  psi.refresh_norm();
  return before > 0.0 ? psi.norm_squared / before : 0.0;
}

Postselected postselect(const StateVector& psi, int qubit, int outcome) {
  require(qubit >= 0 && qubit < psi.num_qubits, "postselected qubit out of range");
  require(outcome == 0 || outcome == 1, "outcome must be 0 or 1");
  const int n = psi.num_qubits;
  const std::size_t b = bit_of(qubit, n);
  const std::size_t low = b - 1;
  StateVector out;
  out.num_qubits = n - 1;
  out.amplitudes = CVec::Zero(static_cast<Eigen::Index>(psi.dim() / 2));
  for (std::size_t j = 0; j < psi.dim() / 2; ++j) {
    const std::size_t i = ((j & ~low) << 1) | (outcome ? b : 0) | (j & low);
    out.amplitudes(static_cast<Eigen::Index>(j)) = psi.amplitudes(static_cast<Eigen::Index>(i));
  }
  const double total = psi.amplitudes.squaredNorm();
  const double kept = out.amplitudes.squaredNorm();
  const double p = total > 0.0 ? kept / total : 0.0;
  if (p < kMinBranch) throw AnnihilatedBranch("postselected branch has probability " + std::to_string(p));
  out.amplitudes /= std::sqrt(kept);
  out.refresh_norm();
  out.survival = psi.survival * p;
  return {std::move(out), p};
}

namespace {

// Moves an ancilla that sits in |1> back to |0>.
void reset_to_zero(StateVector& psi, int qubit) {
  const std::size_t b = bit_of(qubit, psi.num_qubits);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if (i & b) {
      psi.amplitudes(static_cast<Eigen::Index>(i & ~b)) = psi.amplitudes(static_cast<Eigen::Index>(i));
      psi.amplitudes(static_cast<Eigen::Index>(i)) = 0.0;
    }
  }
}

CVec run_unnormalized(const Circuit& c, const CVec& input) {
  const int s = c.num_system;
  const int a = c.num_ancilla;
  StateVector psi;
  psi.num_qubits = c.total_qubits();
  psi.amplitudes = CVec::Zero(static_cast<Eigen::Index>(dim_of(s + a)));
  for (Eigen::Index j = 0; j < input.size(); ++j) {
    psi.amplitudes(static_cast<Eigen::Index>(static_cast<std::size_t>(j) << a)) = input(j);
  }
  std::vector<PostselectStep> plan = c.postselect_plan;
  std::stable_sort(plan.begin(), plan.end(),
                   [](const auto& x, const auto& y) { return x.after_gate < y.after_gate; });
  auto next = plan.begin();
  for (std::size_t g = 0; g <= c.gates.size(); ++g) {
    while (next != plan.end() && next->after_gate == g) {
      project(psi, next->qubit, next->outcome);
      if (next->outcome == 1) reset_to_zero(psi, next->qubit);
      ++next;
    }
    if (g < c.gates.size()) apply_gate(psi, c.gates[g]);
  }
  CVec out(static_cast<Eigen::Index>(dim_of(s)));
  for (std::size_t j = 0; j < dim_of(s); ++j) {
    out(static_cast<Eigen::Index>(j)) = psi.amplitudes(static_cast<Eigen::Index>(j << a));
  }
  return out * std::polar(1.0, c.global_phase);
}

}  // namespace

RunResult run(const Circuit& c, const StateVector& system_input) {
  require(system_input.num_qubits == c.num_system, "input size does not match the circuit");
  RunResult r;
  r.unnormalized = run_unnormalized(c, system_input.amplitudes);
  const double in = system_input.amplitudes.squaredNorm();
  const double out = r.unnormalized.squaredNorm();
  r.probability = in > 0.0 ? out / in : 0.0;
  if (r.probability < kMinBranch) {
    throw AnnihilatedBranch("postselected branch has probability " + std::to_string(r.probability));
  }
  r.state = StateVector::from_amplitudes(r.unnormalized / std::sqrt(out));
  r.state.survival = system_input.survival * r.probability;
  return r;
}

CMat circuit_unitary(const Circuit& c) {
  const int n = c.total_qubits();
  if (n > 14) throw BudgetExceeded("circuit_unitary is limited to 14 qubits");
  require(c.postselect_plan.empty(), "circuit_unitary needs a circuit without postselection");
  const std::size_t d = dim_of(n);
  CMat u(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t col = 0; col < d; ++col) {
    StateVector psi = StateVector::basis(n, col);
    apply_gates(psi, c);
    u.col(static_cast<Eigen::Index>(col)) = psi.amplitudes;
  }
  return u;
}

CMat block_matrix(const Circuit& c) {
  if (c.total_qubits() > 24) throw BudgetExceeded("block_matrix is limited to 24 qubits");
  const std::size_t d = dim_of(c.num_system);
  CMat b(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t col = 0; col < d; ++col) {
    CVec e = CVec::Zero(static_cast<Eigen::Index>(d));
    e(static_cast<Eigen::Index>(col)) = 1.0;
    b.col(static_cast<Eigen::Index>(col)) = run_unnormalized(c, e);
  }
  return b;
}

void apply_unitary(DensityMatrix& rho, const CMat& u) {
  require(u.rows() == rho.rho.rows() && u.cols() == rho.rho.cols(), "unitary size mismatch");
  rho.rho = u * rho.rho * u.adjoint();
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  if (keep.empty()) throw InvalidArgument("partial_trace needs at least one kept qubit");
  const int n = rho.num_qubits;
  std::set<int> seen;
  for (int q : keep) {
    require(q >= 0 && q < n, "kept qubit out of range");
    require(seen.insert(q).second, "repeated kept qubit");
  }
  const int k = static_cast<int>(keep.size());
  std::size_t keep_mask = 0;
  for (int q : keep) keep_mask |= bit_of(q, n);
  const std::size_t traced_mask = (dim_of(n) - 1) & ~keep_mask;

  auto reduced_index = [&](std::size_t i) {
    std::size_t r = 0;
    for (int t = 0; t < k; ++t) {
      if (i & bit_of(keep[static_cast<std::size_t>(t)], n)) r |= std::size_t{1} << (k - 1 - t);
    }
    return r;
  };

  DensityMatrix out;
  out.num_qubits = k;
  out.rho = CMat::Zero(static_cast<Eigen::Index>(dim_of(k)), static_cast<Eigen::Index>(dim_of(k)));
  const std::size_t d = dim_of(n);
  std::vector<std::size_t> red(d);
  for (std::size_t i = 0; i < d; ++i) red[i] = reduced_index(i);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if ((i & traced_mask) != (j & traced_mask)) continue;
      out.rho(static_cast<Eigen::Index>(red[i]), static_cast<Eigen::Index>(red[j])) +=
          rho.rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

namespace {
void require_hermitian(const CMat& obs, Eigen::Index dim) {
  require(obs.rows() == dim && obs.cols() == dim, "observable has the wrong size");
  if ((obs - obs.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidArgument("observable is not Hermitian");
  }
}
}  // namespace

cplx expectation(const StateVector& psi, const CMat& observable) {
  require_hermitian(observable, psi.amplitudes.size());
  return psi.amplitudes.dot(observable * psi.amplitudes);
}

double expectation(const DensityMatrix& rho, const CMat& observable) {
  require_hermitian(observable, rho.rho.rows());
  return (rho.rho * observable).trace().real();
}

PhaseFit compare_up_to_phase(const CMat& a, const CMat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "shape mismatch");
  const cplx overlap = (b.adjoint() * a).trace();
  PhaseFit fit;
  fit.phase = std::abs(overlap) > 0.0 ? std::arg(overlap) : 0.0;
  fit.max_deviation = (a - std::polar(1.0, fit.phase) * b).cwiseAbs().maxCoeff();
  return fit;
}

PhaseFit compare_up_to_phase(const CVec& a, const CVec& b) {
  return compare_up_to_phase(CMat(a), CMat(b));
}

double spectral_distance_up_to_phase(const CMat& a, const CMat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols() && a.rows() == a.cols(), "shape mismatch");
  // b^dagger a is unitary; the distance is set by the shortest arc that
  // holds all of its eigenphases.
  Eigen::ComplexEigenSolver<CMat> es(b.adjoint() * a, false);
  std::vector<double> ph;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ph.push_back(std::arg(es.eigenvalues()(i)));
  std::sort(ph.begin(), ph.end());
  double widest_gap = 2.0 * kPi - (ph.back() - ph.front());
  for (std::size_t i = 1; i < ph.size(); ++i) widest_gap = std::max(widest_gap, ph[i] - ph[i - 1]);
  const double arc = 2.0 * kPi - widest_gap;
  return 2.0 * std::sin(arc / 4.0);
}

GateCounts count_gates(const Circuit& c) {
  GateCounts counts;
  for (const auto& g : c.gates) {
    const std::size_t s = g.support();
    if (s == 1) {
      ++counts.one_qubit;
    } else if (s == 2) {
      ++counts.two_qubit;
    } else if (!g.controls.empty()) {
      ++counts.multi_controlled;
    } else {
      ++counts.dense_multi_qubit;
    }
  }
  return counts;
}

std::size_t circuit_depth(const Circuit& c) {
  std::vector<std::size_t> level(static_cast<std::size_t>(c.total_qubits()), 0);
  std::size_t depth = 0;
  for (const auto& g : c.gates) {
    std::size_t start = 0;
    for (int q : g.targets) start = std::max(start, level[static_cast<std::size_t>(q)]);
    for (const auto& ct : g.controls) start = std::max(start, level[static_cast<std::size_t>(ct.qubit)]);
    for (int q : g.targets) level[static_cast<std::size_t>(q)] = start + 1;
    for (const auto& ct : g.controls) level[static_cast<std::size_t>(ct.qubit)] = start + 1;
    depth = std::max(depth, start + 1);
  }
  return depth;
}

CMat pauli_matrix(char p) {
  CMat m = CMat::Zero(2, 2);
  switch (p) {
    case 'I':
      m(0, 0) = m(1, 1) = 1.0;
      break;
    case 'X':
      m(0, 1) = m(1, 0) = 1.0;
      break;
    case 'Y':
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case 'Z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw InvalidArgument(std::string("unknown Pauli '") + p + "'");
  }
  return m;
}

CMat hadamard() {
  CMat h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

CMat ry(double angle) {
  CMat m(2, 2);
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  m << c, -s, s, c;
  return m;
}

CMat phase_gate(double angle) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = std::polar(1.0, angle);
  return m;
}

CMat z_rotation(double angle) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = std::polar(1.0, angle);
  m(1, 1) = std::polar(1.0, -angle);
  return m;
}

}  // namespace qpde
