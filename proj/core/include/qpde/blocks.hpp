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

#include "qpde/grid.hpp"
#include "qpde/sim.hpp"
#include "qpde/spectral.hpp"

namespace qpde {

// Tensor product of single-qubit Paulis on the listed qubits.
struct PauliString {
  std::vector<int> qubits;
  std::string ops;  // one of I, X, Y, Z per qubit

  int weight() const;
  CMat local_matrix() const;             // on `qubits`, first qubit most significant
  CMat full_matrix(int num_qubits) const;
};

// The ancilla-|0> block of `circuit` equals target / scale.
struct BlockEncoding {
  Circuit circuit;
  int ancilla_count = 0;
  double scale = 1.0;
  CMat target;
  // Calls to the controlled phase oracle in the select stage.
  std::size_t oracle_queries = 0;
  std::string description;
};

// Diagonal generator constant + sum_t weight_t Z_{qubits_t}.
struct ZTerm {
  std::vector<int> qubits;
  double weight = 0.0;
};
struct ZPhaseOperator {
  int num_qubits = 0;
  double constant = 0.0;
  std::vector<ZTerm> terms;

  std::vector<double> diagonal() const;
};

// factor * khat and factor * khat^2 on an n-qubit wavenumber register.
ZPhaseOperator khat_operator(int n, double factor);
ZPhaseOperator khat_squared_operator(int n, double factor);

// exp(i g) on the system register, or |0><0| 1 + |1><1| exp(i g) with the
// control as the single ancilla (last qubit).
Circuit phase_circuit(const ZPhaseOperator& g);
Circuit controlled_phase_circuit(const ZPhaseOperator& g);

// Controlled exp(i 2 pi khat / (denominator N)), denominator 1 or 2.
Circuit build_U_khat(int n, int denominator);

// Removes the control qubit: gates controlled on it become unconditional,
// phase gates on it become a global phase, gates conditioned on |0> vanish.
Circuit decontrol(const Circuit& controlled, int control);

// Prepare-select-unprepare realization of sum_z c_z U^z for a controlled
// U. Uses ceil(log2(2D + 1)) index ancillas and dense state preparations.
BlockEncoding realize_fourier_series(const FourierSeries& series, const Circuit& controlled_phase);

// exp(theta P) / exp(|theta|) with one ancilla.
BlockEncoding pauli_exp_block(double theta, const PauliString& p, int num_qubits);
double pauli_exp_angle(double theta);

// sum_j c_j U_j / sum_j |c_j| for ancilla-free unitaries U_j.
BlockEncoding lcu_block_encode(const std::vector<cplx>& coeffs, const std::vector<Circuit>& unitaries);

// Dense unitary whose first column is `v` (unit norm).
CMat state_preparation_unitary(const CVec& v);

// Runs the parts one after another on a shared ancilla pool, postselecting
// after each part. maps[i] gives the system qubits of part i.
BlockEncoding compose_sequential(const std::vector<BlockEncoding>& parts,
                                 const std::vector<std::vector<int>>& maps, int num_system);
// Same, with a separate ancilla pool per part and postselection at the end.
BlockEncoding compose_parallel(const std::vector<BlockEncoding>& parts,
                               const std::vector<std::vector<int>>& maps, int num_system);

// Dense F diag F^dagger over the grid in register layout; `symbol` is
// indexed by flat wavenumber register value.
CMat apply_spectral_function_exact(const std::vector<cplx>& symbol, const GridSpec& grid);
// Centered transform on the whole grid, register layout.
CMat grid_fourier_matrix(const GridSpec& grid);

std::string gate_counts_json(const BlockEncoding& be);

}  // namespace qpde
