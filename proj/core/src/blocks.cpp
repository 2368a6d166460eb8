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

#include "qpde/blocks.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace qpde {

namespace {

int index_qubits_for(std::size_t count) {
  int m = 1;
  while (dim_of(m) < count) ++m;
  return m;
}

CMat z_string_phase(int k, double weight) {
  const auto d = static_cast<Eigen::Index>(dim_of(k));
  CMat m = CMat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const int parity = __builtin_popcountll(static_cast<unsigned long long>(i)) % 2;
    m(i, i) = std::polar(1.0, parity ? -weight : weight);
  }
  return m;
}

std::vector<int> identity_map(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
  return m;
}

}  // namespace

int PauliString::weight() const {
  return static_cast<int>(std::count_if(ops.begin(), ops.end(), [](char c) { return c != 'I'; }));
}

CMat PauliString::local_matrix() const {
  require(qubits.size() == ops.size(), "Pauli string qubits and ops differ in length");
  CMat m = CMat::Identity(1, 1);
  for (char c : ops) m = kron(m, pauli_matrix(c));
  return m;
}

CMat PauliString::full_matrix(int num_qubits) const {
  std::string full(static_cast<std::size_t>(num_qubits), 'I');
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    require(qubits[i] >= 0 && qubits[i] < num_qubits, "Pauli qubit out of range");
    full[static_cast<std::size_t>(qubits[i])] = ops[i];
  }
  CMat m = CMat::Identity(1, 1);
  for (char c : full) m = kron(m, pauli_matrix(c));
  return m;
}

std::vector<double> ZPhaseOperator::diagonal() const {
  std::vector<double> d(dim_of(num_qubits), constant);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (const auto& t : terms) {
      int parity = 0;
      for (int q : t.qubits) parity ^= static_cast<int>((i >> (num_qubits - 1 - q)) & 1U);
      d[i] += parity ? -t.weight : t.weight;
    }
  }
  return d;
}

ZPhaseOperator khat_operator(int n, double factor) {
  // khat = -(N/4) sum_b 2^-b Z_b - 1/2
  ZPhaseOperator g;
  g.num_qubits = n;
  g.constant = -0.5 * factor;
  const double nn = std::ldexp(1.0, n);
  for (int b = 0; b < n; ++b) g.terms.push_back({{b}, -factor * nn / 4.0 * std::ldexp(1.0, -b)});
  return g;
}

ZPhaseOperator khat_squared_operator(int n, double factor) {
  ZPhaseOperator g;
  g.num_qubits = n;
  const double nn = std::ldexp(1.0, n);
  std::vector<double> a(static_cast<std::size_t>(n));
  double sq = 0.0;
  for (int b = 0; b < n; ++b) {
    a[static_cast<std::size_t>(b)] = nn / 4.0 * std::ldexp(1.0, -b);
    sq += a[static_cast<std::size_t>(b)] * a[static_cast<std::size_t>(b)];
  }
  g.constant = factor * (0.25 + sq);
  for (int b = 0; b < n; ++b) g.terms.push_back({{b}, factor * a[static_cast<std::size_t>(b)]});
  for (int z = 0; z < n; ++z) {
    for (int e = z + 1; e < n; ++e) {
      g.terms.push_back({{z, e}, 2.0 * factor * a[static_cast<std::size_t>(z)] * a[static_cast<std::size_t>(e)]});
    }
  }
  return g;
}

Circuit phase_circuit(const ZPhaseOperator& g) {
  Circuit c(g.num_qubits);
  for (const auto& t : g.terms) {
    c.add(make_gate(t.qubits, z_string_phase(static_cast<int>(t.qubits.size()), t.weight), {}, "Zrot"));
  }
  c.global_phase = g.constant;
  return c;
}

Circuit controlled_phase_circuit(const ZPhaseOperator& g) {
  const int ctrl = g.num_qubits;
  Circuit c(g.num_qubits, 1);
  if (g.constant != 0.0) c.add(make_gate({ctrl}, phase_gate(g.constant), {}, "Phase"));
  for (const auto& t : g.terms) {
    c.add(make_gate(t.qubits, z_string_phase(static_cast<int>(t.qubits.size()), t.weight), {{ctrl, 1}},
                    "CZrot"));
  }
  return c;
}

Circuit build_U_khat(int n, int denominator) {
  require(denominator == 1 || denominator == 2, "denominator must be 1 or 2");
  const double nn = std::ldexp(1.0, n);
  return controlled_phase_circuit(khat_operator(n, 2.0 * kPi / (denominator * nn)));
}

Circuit decontrol(const Circuit& controlled, int control) {
  require(controlled.postselect_plan.empty(), "decontrol needs a circuit without postselection");
  Circuit c(controlled.num_system, controlled.num_ancilla);
  c.global_phase = controlled.global_phase;
  for (const auto& g : controlled.gates) {
    bool on_one = false;
    bool on_zero = false;
    Gate m = g;
    m.controls.clear();
    for (const auto& ct : g.controls) {
      if (ct.qubit == control) {
        (ct.value == 1 ? on_one : on_zero) = true;
      } else {
        m.controls.push_back(ct);
      }
    }
    if (on_zero) continue;
    if (g.targets.size() == 1 && g.targets[0] == control) {
      require(g.diagonal && g.controls.empty(), "control qubit is the target of a non-diagonal gate");
      c.global_phase += std::arg(g.matrix(1, 1)) - std::arg(g.matrix(0, 0));
      continue;
    }
    for (int q : g.targets) require(q != control, "control qubit is the target of a multi-qubit gate");
    c.add(std::move(m));
  }
  return c;
}

CMat state_preparation_unitary(const CVec& v) {
  const Eigen::Index d = v.size();
  require(d >= 1 && std::abs(v.norm() - 1.0) < 1e-10, "state preparation needs a unit vector");
  CMat m = CMat::Identity(d, d);
  m.col(0) = v;
  Eigen::HouseholderQR<CMat> qr(m);
  CMat q = qr.householderQ();
  const cplx r00 = qr.matrixQR()(0, 0);
  q.col(0) *= r00 / std::abs(r00);
  return q;
}

BlockEncoding realize_fourier_series(const FourierSeries& series, const Circuit& controlled_phase) {
  require(controlled_phase.num_ancilla == 1, "controlled phase oracle needs exactly one control ancilla");
  const double s = series.one_norm();
  if (!(s > 0.0)) throw InvalidArgument("series coefficients are all zero");
  const std::size_t count = series.coeffs.size();
  const int m = index_qubits_for(count);
  if (m > kMaxGateTargets) {
    throw BudgetExceeded(fmt::format("series needs {} index qubits, limit is {}", m, kMaxGateTargets));
  }
  const int sys = controlled_phase.num_system;
  const int ctrl = sys;

  CVec left = CVec::Zero(static_cast<Eigen::Index>(dim_of(m)));
  CVec right = CVec::Zero(static_cast<Eigen::Index>(dim_of(m)));
  for (std::size_t j = 0; j < count; ++j) {
    const cplx c = series.coeffs[j];
    const double a = std::sqrt(std::abs(c) / s);
    left(static_cast<Eigen::Index>(j)) = a;
    right(static_cast<Eigen::Index>(j)) = std::abs(c) > 0.0 ? a * std::conj(c) / std::abs(c) : 0.0;
  }

  BlockEncoding be;
  be.circuit = Circuit(sys, m);
  be.ancilla_count = m;
  be.scale = s;
  std::vector<int> index(static_cast<std::size_t>(m));
  for (int b = 0; b < m; ++b) index[static_cast<std::size_t>(b)] = sys + b;

  be.circuit.add(make_gate(index, state_preparation_unitary(left), {}, "Prep"));
  std::vector<int> map = identity_map(sys + 1);
  for (int b = 0; b < m; ++b) {
    map[static_cast<std::size_t>(ctrl)] = sys + m - 1 - b;
    const std::size_t reps = std::size_t{1} << b;
    for (std::size_t r = 0; r < reps; ++r) be.circuit.append(controlled_phase, map);
    be.oracle_queries += reps;
  }
  if (series.min_index != 0) {
    const Circuit free = decontrol(controlled_phase, ctrl);
    const Circuit step = series.min_index < 0 ? free.inverse() : free;
    map[static_cast<std::size_t>(ctrl)] = sys;
    for (int r = 0; r < std::abs(series.min_index); ++r) be.circuit.append(step, map);
    be.oracle_queries += static_cast<std::size_t>(std::abs(series.min_index));
  }
  be.circuit.add(make_gate(index, state_preparation_unitary(right).adjoint(), {}, "Unprep"));
  be.description = fmt::format("fourier series D={} terms={}", series.D, count);
  return be;
}

double pauli_exp_angle(double theta) {
  const double c = std::cosh(theta);
  return 2.0 * std::acos(std::sqrt(c / (c + std::sinh(std::abs(theta)))));
}

BlockEncoding pauli_exp_block(double theta, const PauliString& p, int num_qubits) {
  require(!p.qubits.empty(), "Pauli string must act on at least one qubit");
  const double phi = pauli_exp_angle(theta);
  const int anc = num_qubits;
  BlockEncoding be;
  be.circuit = Circuit(num_qubits, 1);
  be.ancilla_count = 1;
  be.circuit.add(make_gate({anc}, ry(phi), {}, "Ry"));
  be.circuit.add(make_gate(p.qubits, p.local_matrix(), {{anc, 1}}, "CP"));
  be.circuit.add(make_gate({anc}, ry(-(theta < 0 ? -1.0 : 1.0) * phi), {}, "Ry"));
  be.scale = std::exp(std::abs(theta));
  be.description = fmt::format("exp({} {})", theta, p.ops);
  return be;
}

BlockEncoding lcu_block_encode(const std::vector<cplx>& coeffs, const std::vector<Circuit>& unitaries) {
  require(!coeffs.empty() && coeffs.size() == unitaries.size(), "LCU needs one coefficient per unitary");
  double s = 0.0;
  for (const auto& c : coeffs) s += std::abs(c);
  if (!(s > 0.0)) throw InvalidArgument("LCU coefficients are all zero");
  const int sys = unitaries[0].num_system;
  for (const auto& u : unitaries) {
    require(u.num_system == sys && u.num_ancilla == 0 && u.postselect_plan.empty(),
            "LCU unitaries must be ancilla-free and equally sized");
  }
  const int m = index_qubits_for(coeffs.size());
  if (m > kMaxGateTargets) throw BudgetExceeded("too many LCU terms");
  CVec left = CVec::Zero(static_cast<Eigen::Index>(dim_of(m)));
  CVec right = CVec::Zero(static_cast<Eigen::Index>(dim_of(m)));
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double a = std::sqrt(std::abs(coeffs[j]) / s);
    left(static_cast<Eigen::Index>(j)) = a;
    right(static_cast<Eigen::Index>(j)) = std::abs(coeffs[j]) > 0.0 ? a * std::conj(coeffs[j]) / std::abs(coeffs[j]) : 0.0;
  }
  BlockEncoding be;
  be.circuit = Circuit(sys, m);
  be.ancilla_count = m;
  be.scale = s;
  std::vector<int> index(static_cast<std::size_t>(m));
  for (int b = 0; b < m; ++b) index[static_cast<std::size_t>(b)] = sys + b;
  be.circuit.add(make_gate(index, state_preparation_unitary(left), {}, "Prep"));
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    std::vector<Control> pattern;
    for (int b = 0; b < m; ++b) {
      pattern.push_back({sys + b, static_cast<int>((j >> (m - 1 - b)) & 1U)});
    }
    for (const auto& g : unitaries[j].gates) {
      Gate cg = g;
      cg.controls.insert(cg.controls.end(), pattern.begin(), pattern.end());
      be.circuit.add(std::move(cg));
    }
    if (unitaries[j].global_phase != 0.0) {
      std::vector<Control> rest(pattern.begin() + 1, pattern.end());
      CMat ph = CMat::Identity(2, 2);
      ph(pattern[0].value, pattern[0].value) = std::polar(1.0, unitaries[j].global_phase);
      be.circuit.add(make_gate({sys}, ph, rest, "Phase"));
    }
    ++be.oracle_queries;
  }
  be.circuit.add(make_gate(index, state_preparation_unitary(right).adjoint(), {}, "Unprep"));
  be.description = fmt::format("lcu terms={}", coeffs.size());
  return be;
}

namespace {

BlockEncoding compose(const std::vector<BlockEncoding>& parts, const std::vector<std::vector<int>>& maps,
                      int num_system, bool shared) {
  require(!parts.empty() && parts.size() == maps.size(), "compose needs one map per part");
  int anc = 0;
  for (const auto& p : parts) anc = shared ? std::max(anc, p.ancilla_count) : anc + p.ancilla_count;
  BlockEncoding be;
  be.circuit = Circuit(num_system, anc);
  be.ancilla_count = anc;
  be.scale = 1.0;
  int next = num_system;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    require(static_cast<int>(maps[i].size()) == p.circuit.num_system, "system map size mismatch");
    std::vector<int> map = maps[i];
    const int base = shared ? num_system : next;
    for (int a = 0; a < p.circuit.num_ancilla; ++a) map.push_back(base + a);
    be.circuit.append(p.circuit, map);
    if (shared) {
      for (int a = 0; a < p.circuit.num_ancilla; ++a) be.circuit.postselect_now(base + a, 0);
    }
    next += shared ? 0 : p.circuit.num_ancilla;
    be.scale *= p.scale;
    be.oracle_queries += p.oracle_queries;
  }
  be.description = fmt::format("{} composition of {} blocks", shared ? "sequential" : "parallel", parts.size());
  return be;
}

}  // namespace

BlockEncoding compose_sequential(const std::vector<BlockEncoding>& parts,
                                 const std::vector<std::vector<int>>& maps, int num_system) {
  return compose(parts, maps, num_system, true);
}

BlockEncoding compose_parallel(const std::vector<BlockEncoding>& parts,
                               const std::vector<std::vector<int>>& maps, int num_system) {
  return compose(parts, maps, num_system, false);
}

CMat grid_fourier_matrix(const GridSpec& grid) {
  grid.validate();
  require(grid.qubits() <= 12, "dense grid transform limited to 12 qubits");
  const CMat f1 = shifted_fourier_matrix(grid.n, ShiftSpec::centered(grid.n));
  CMat f = f1;
  for (int a = 1; a < grid.d; ++a) f = kron(f, f1);
  return f;
}

CMat apply_spectral_function_exact(const std::vector<cplx>& symbol, const GridSpec& grid) {
  require(symbol.size() == grid.size(), "symbol size does not match grid");
  const CMat f = grid_fourier_matrix(grid);
  CVec diag(static_cast<Eigen::Index>(symbol.size()));
  for (std::size_t i = 0; i < symbol.size(); ++i) diag(static_cast<Eigen::Index>(i)) = symbol[i];
  return f * diag.asDiagonal() * f.adjoint();
}

std::string gate_counts_json(const BlockEncoding& be) {
  const GateCounts c = count_gates(be.circuit);
  return fmt::format(
      "{{\"one_qubit\": {}, \"two_qubit\": {}, \"multi_controlled\": {}, \"dense_multi_qubit\": {}, "
      "\"ancillas\": {}, \"oracle_queries\": {}, \"scale\": {:.17g}}}",
      c.one_qubit, c.two_qubit, c.multi_controlled, c.dense_multi_qubit, be.ancilla_count,
      be.oracle_queries, be.scale);
}

}  // namespace qpde
