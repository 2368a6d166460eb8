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

#include "qpde/evolution.hpp"

namespace qpde {

std::vector<int> register_qubits(const GridSpec& grid, int axis, int offset) {
  require(axis >= 0 && axis < grid.d, "axis out of range");
  std::vector<int> q(static_cast<std::size_t>(grid.n));
  for (int b = 0; b < grid.n; ++b) q[static_cast<std::size_t>(b)] = offset + axis * grid.n + b;
  return q;
}

Circuit wrap_in_fourier(const BlockEncoding& block, const GridSpec& grid, int offset) {
  const Circuit& b = block.circuit;
  require(b.num_system >= offset + grid.qubits(), "block is smaller than the grid registers");
  const Circuit f = tensor_qft_d(grid, ShiftSpec::centered(grid.n));
  std::vector<int> fmap(static_cast<std::size_t>(grid.qubits()));
  for (int q = 0; q < grid.qubits(); ++q) fmap[static_cast<std::size_t>(q)] = offset + q;
  std::vector<int> all(static_cast<std::size_t>(b.total_qubits()));
  for (int q = 0; q < b.total_qubits(); ++q) all[static_cast<std::size_t>(q)] = q;
  Circuit c(b.num_system, b.num_ancilla);
  c.append(f.inverse(), fmap);
  c.append(b, all);
  c.append(f, fmap);
  return c;
}

BlockEncoding per_dimension_series(const GridSpec& grid, const std::vector<FourierSeries>& series,
                                   const std::vector<Circuit>& controlled_phases, Layout layout) {
  require(static_cast<int>(series.size()) == grid.d && controlled_phases.size() == series.size(),
          "need one series and one oracle per dimension");
  std::vector<BlockEncoding> parts;
  std::vector<std::vector<int>> maps;
  for (int a = 0; a < grid.d; ++a) {
    parts.push_back(realize_fourier_series(series[static_cast<std::size_t>(a)],
                                           controlled_phases[static_cast<std::size_t>(a)]));
    maps.push_back(register_qubits(grid, a));
  }
  if (grid.d == 1) return parts[0];
  return layout == Layout::Sequential ? compose_sequential(parts, maps, grid.qubits())
                                      : compose_parallel(parts, maps, grid.qubits());
}

FieldRun run_on_field(const Circuit& c, const CVec& natural, const GridSpec& grid) {
  require(c.num_system == grid.qubits(), "circuit does not match the grid");
  const double norm = natural.norm();
  require(norm > 0.0, "input field is zero");
  const StateVector in = StateVector::from_amplitudes(encode_positions(natural / norm, grid));
  const RunResult r = run(c, in);
  FieldRun out;
  out.field = decode_positions(r.state.amplitudes, grid);
  out.probability = r.probability;
  return out;
}

double fidelity(const CVec& a, const CVec& b) {
  const double na = a.norm(), nb = b.norm();
  require(na > 0.0 && nb > 0.0, "fidelity of a zero vector");
  return std::norm(a.dot(b)) / (na * na * nb * nb);
}

}  // namespace qpde
