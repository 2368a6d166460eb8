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

// Wave equation recast as Schrodinger evolution on a gamma register of
// anticommuting Pauli strings tensored with the grid. Dense operators use
// natural grid order with the gamma register as the most significant part;
// circuits use register layout.

#pragma once

#include <string>
#include <vector>

#include "qpde/evolution.hpp"

namespace qpde {

struct GammaSet {
  int d = 0;
  int qubits = 0;
  std::vector<PauliString> strings;
  int max_weight = 0;
};

// Root-to-leaf strings of a ternary tree over `qubits` nodes.
GammaSet gamma_ternary_tree(int d);

// sqrt(-Laplacian) along `axis`: F diag(2 N sin(pi k / N)) F^dagger.
CMat sqrt_minus_laplacian(const GridSpec& grid, int axis);
// v sum_a gamma_a (x) sqrt_minus_laplacian(a).
CMat wave_hamiltonian(const GammaSet& gammas, const GridSpec& grid, double speed);

// Permutes the grid part of each gamma sector into register layout.
CVec wave_to_register_layout(const CVec& natural, int gamma_qubits, const GridSpec& grid);
CVec wave_from_register_layout(const CVec& registers, int gamma_qubits, const GridSpec& grid);
CMat wave_operator_to_register_layout(const CMat& natural, int gamma_qubits, const GridSpec& grid);

enum class WaveVariant { A, B };

struct WaveEncoding {
  WaveVariant variant = WaveVariant::A;
  int zeta = 0;
  int gamma_qubits = 0;
  CVec state;         // normalized
  double norm = 0.0;  // norm before normalization

  // Grid content of gamma sector `sector`.
  CVec block(int sector) const;
};

// A: |zeta> dtf - i H |zeta> f.  B: |zeta> f + i H^+ |zeta> dtf.
WaveEncoding encode_initial(WaveVariant variant, int zeta, const CVec& f, const CVec& dtf,
                            const CMat& hamiltonian, int gamma_qubits);

struct WaveFields {
  CVec f;
  CVec dtf;
};

// Least-squares inverse of the encoding map; the kernel component of f
// (variant A) or dtf (variant B) is not recoverable and comes back as zero.
WaveFields decode_wave(WaveVariant variant, int zeta, const CVec& state, const CMat& hamiltonian,
                       int gamma_qubits, double norm = 1.0);

CVec evolve_wave_oracle(const CMat& hamiltonian, const CVec& psi0, double time);

// Summing-ancilla preparation: the two branches are prepared by dense state
// preparations, and the H (variant A) or H^+ (variant B) factor is a dense
// dilation on one extra ancilla. Acts in register layout.
Circuit wave_state_prep_circuit(WaveVariant variant, int zeta, const CVec& f, const CVec& dtf,
                                const CMat& hamiltonian, int gamma_qubits, const GridSpec& grid);

// One-dimensional evolution exp(-i t X (x) O) with t the time scaled by the
// speed. Qubit 0 is the gamma qubit, the grid follows.
EvolutionCircuit build_wave_1d_ja(int n, double scaled_time, double epsilon);
EvolutionCircuit build_wave_1d_dft(int n, double scaled_time);

struct WaveSmoothCircuit {
  GammaSet gammas;
  int layers = 0;
  Circuit wavenumber_space;  // exp(-i 2 pi t sum gamma (x) khat) or its product formula
  Circuit full;              // conjugated by the grid transforms (and H for d = 1)
};

// d = 1: exact exp(-i 2 pi t Z (x) khat). d > 1: first-order product of
// exp(-i 2 pi tau gamma_a (x) khat_a) layers.
WaveSmoothCircuit build_wave_smooth(int d, int n, double scaled_time, double tau);

// exp(-i 2 pi t sum gamma_a (x) khat_a) on one wavenumber mode, dense.
CMat wave_mode_evolution(const GammaSet& gammas, const std::vector<double>& khat, double scaled_time);

// Worst operator-norm error of build_wave_smooth(d, n, t, tau) over modes
// with |khat_a| <= kmax, read off the compiled circuit.
double wave_trotter_error(int d, int n, double scaled_time, double tau, int kmax);

struct WaveBlockEncoding {
  GammaSet gammas;
  BlockEncoding block;
  int select_qubits = 0;
  double prepare_angle = 0.0;  // top-ancilla rotation
  double inverse_constant = 0.0;  // the block equals shifted_hamiltonian times this
  bool identity_sign_flipped = false;
};

// Prepare-select block of (H + sqrt(d)) / (2 sqrt(d)) with
// H = sum gamma_a (x) sin(pi khat_a / N), acting in wavenumber space.
WaveBlockEncoding build_wave_block_encoding(int d, int n);
// The target above, dense.
CMat wave_shifted_hamiltonian(const GammaSet& gammas, int n);

struct CensusRow {
  std::string gate;
  int count = 0;
  int controls = 0;
  int max_pauli_weight = 0;
  long cnots_each = 0;
};

struct WaveCensus {
  int d = 0;
  int n = 0;
  bool table_applies = true;  // the tabulated rows cover d > 1
  std::vector<CensusRow> rows;
  long total_cnots() const;
  std::string csv() const;
};

// Counts the multi-controlled gates of build_wave_block_encoding with CNOT
// estimates: 2(r - 1) + 2q per weight-r rotation, 2q per controlled Z
// rotation, 2(q - 1)^2 per controlled phase.
WaveCensus wave_gate_census(int d, int n);

}  // namespace qpde
