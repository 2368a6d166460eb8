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

#include "qpde/grid.hpp"

#include <cmath>

namespace qpde {

std::vector<double> GridSpec::positions() const {
  const long nn = N();
  std::vector<double> x(static_cast<std::size_t>(nn));
  for (long l = 0; l < nn; ++l) {
    const double h = static_cast<double>(l) / static_cast<double>(nn);
    x[static_cast<std::size_t>(l)] =
        convention == GridConvention::Symmetric ? -0.5 + 0.5 / static_cast<double>(nn) + h : h;
  }
  return x;
}

void GridSpec::validate() const {
  require(d >= 1 && n >= 1, "grid needs d >= 1 and n >= 1");
  require(d * n <= 30, "grid exceeds 30 qubits");
}

ShiftSpec ShiftSpec::centered(int n) {
  const double nn = std::ldexp(1.0, n);
  return {-nn / 2.0, -(nn - 1.0) / 2.0};
}

std::vector<double> khat_diagonal(int n) {
  const std::size_t nn = dim_of(n);
  std::vector<double> k(nn);
  for (std::size_t i = 0; i < nn; ++i) k[i] = static_cast<double>(i) - static_cast<double>(nn) / 2.0;
  return k;
}

std::vector<double> lhat_diagonal(int n) {
  const std::size_t nn = dim_of(n);
  std::vector<double> l(2 * nn);
  for (std::size_t i = 0; i < 2 * nn; ++i) l[i] = static_cast<double>(i) - static_cast<double>(nn) / 2.0;
  return l;
}

Circuit build_approx_qft(int n, const ShiftSpec& shifts, double threshold) {
  require(n >= 1 && n <= 30, "QFT size out of range");
  Circuit c(n);
  for (int z = 0; z < n; ++z) {
    if (shifts.b != 0.0) c.add(make_gate({z}, phase_gate(kPi * std::ldexp(shifts.b, -z)), {}, "Rb"));
  }
  for (int j = 0; j < n; ++j) {
    c.add(make_gate({j}, hadamard(), {}, "H"));
    for (int m = j + 1; m < n; ++m) {
      const double angle = kPi * std::ldexp(1.0, j - m);
      if (std::abs(angle) < threshold) continue;
      c.add(make_gate({j}, phase_gate(angle), {{m, 1}}, "CR"));
    }
  }
  for (int z = 0; z < n; ++z) {
    if (shifts.a != 0.0) c.add(make_gate({z}, phase_gate(kPi * std::ldexp(shifts.a, z - n + 1)), {}, "Ra"));
  }
  return c;
}

Circuit build_shifted_qft(int n, const ShiftSpec& shifts) {
  return build_approx_qft(n, shifts, 0.0);
}

Circuit tensor_qft_d(const GridSpec& grid, const ShiftSpec& shifts) {
  grid.validate();
  Circuit one = build_shifted_qft(grid.n, shifts);
  Circuit c(grid.qubits());
  for (int a = 0; a < grid.d; ++a) {
    std::vector<int> map(static_cast<std::size_t>(grid.n));
    for (int q = 0; q < grid.n; ++q) map[static_cast<std::size_t>(q)] = a * grid.n + q;
    c.append(one, map);
  }
  return c;
}

CMat shifted_fourier_matrix(int n, const ShiftSpec& shifts) {
  const std::size_t nn = dim_of(n);
  const double dn = static_cast<double>(nn);
  CMat f(static_cast<Eigen::Index>(nn), static_cast<Eigen::Index>(nn));
  for (std::size_t l = 0; l < nn; ++l) {
    for (std::size_t k = 0; k < nn; ++k) {
      const double e = 2.0 * kPi * (static_cast<double>(k) + shifts.a) *
                       (static_cast<double>(l) + shifts.b) / dn;
      f(static_cast<Eigen::Index>(bit_reverse(l, n)), static_cast<Eigen::Index>(k)) =
          std::polar(1.0 / std::sqrt(dn), e);
    }
  }
  return f;
}

std::size_t position_register_index(std::size_t natural, const GridSpec& grid) {
  const std::size_t nn = dim_of(grid.n);
  std::size_t out = 0;
  std::size_t stride = 1;
  for (int a = grid.d - 1; a >= 0; --a) {
    const std::size_t l = (natural / stride) % nn;
    out += bit_reverse(l, grid.n) * stride;
    stride *= nn;
  }
  return out;
}

CVec encode_positions(const CVec& natural, const GridSpec& grid) {
  require(static_cast<std::size_t>(natural.size()) == grid.size(), "field size does not match grid");
  CVec out(natural.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out(static_cast<Eigen::Index>(position_register_index(i, grid))) = natural(static_cast<Eigen::Index>(i));
  }
  return out;
}

CVec decode_positions(const CVec& registers, const GridSpec& grid) {
  require(static_cast<std::size_t>(registers.size()) == grid.size(), "field size does not match grid");
  CVec out(registers.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = registers(static_cast<Eigen::Index>(position_register_index(i, grid)));
  }
  return out;
}

CMat operator_to_register_layout(const CMat& natural, const GridSpec& grid) {
  require(static_cast<std::size_t>(natural.rows()) == grid.size() && natural.rows() == natural.cols(),
          "operator size does not match grid");
  std::vector<Eigen::Index> p(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) p[i] = static_cast<Eigen::Index>(position_register_index(i, grid));
  CMat out(natural.rows(), natural.cols());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      out(p[i], p[j]) = natural(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

BoundaryExtension boundary_extension(const StateVector& field, Boundary kind) {
  const int n = field.num_qubits;
  require(n >= 1, "boundary extension needs at least one qubit");
  Circuit c(n + 1);
  const double phi = kind == Boundary::Dirichlet ? -kPi / 2.0 : kPi / 2.0;
  c.add(make_gate({n}, ry(phi), {}, "Ry"));
  for (int q = 0; q < n; ++q) c.add(make_gate({q}, pauli_matrix('X'), {{n, 1}}, "CX"));

  StateVector psi;
  psi.num_qubits = n + 1;
  psi.amplitudes = CVec::Zero(static_cast<Eigen::Index>(dim_of(n + 1)));
  for (std::size_t j = 0; j < field.dim(); ++j) {
    psi.amplitudes(static_cast<Eigen::Index>(j << 1)) = field.amplitudes(static_cast<Eigen::Index>(j));
  }
  psi.refresh_norm();
  apply_gates(psi, c);
  return {std::move(c), std::move(psi)};
}

}  // namespace qpde
