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

#include "qpde/common.hpp"

namespace qpde {

// Qubit 0 is the most significant bit of the flat amplitude index.
struct StateVector {
  int num_qubits = 0;
  CVec amplitudes;
  // Sum of |amplitude|^2, refreshed after every operation.
  double norm_squared = 0.0;
  // Product of all postselection probabilities that produced this state.
  double survival = 1.0;

  static StateVector basis(int num_qubits, std::size_t index = 0);
  static StateVector from_amplitudes(const CVec& amps);
  void refresh_norm() { norm_squared = amplitudes.squaredNorm(); }
  void normalize();
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
};

struct DensityMatrix {
  int num_qubits = 0;
  CMat rho;

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix from_matrix(const CMat& m);
  cplx trace() const { return rho.trace(); }
};

struct Control {
  int qubit = 0;
  int value = 1;
};

// Dense k-qubit unitary. targets[0] is the most significant bit of the
// matrix index.
struct Gate {
  std::vector<int> targets;
  CMat matrix;
  std::vector<Control> controls;
  std::string label;
  bool diagonal = false;

  std::size_t support() const { return targets.size() + controls.size(); }
};

inline constexpr int kMaxGateTargets = 10;

// Validates shape and unitarity (tolerance 1e-12 times the matrix size).
Gate make_gate(std::vector<int> targets, CMat matrix,
               std::vector<Control> controls = {}, std::string label = {});

struct PostselectStep {
  int qubit = 0;
  int outcome = 0;
  // Number of gates applied before the projection happens.
  std::size_t after_gate = 0;
};

// System qubits occupy [0, num_system); ancillas follow.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int num_system, int num_ancilla = 0)
      : num_system(num_system), num_ancilla(num_ancilla) {}

  int num_system = 0;
  int num_ancilla = 0;
  std::vector<Gate> gates;
  double global_phase = 0.0;
  // Mid-circuit projections. An ancilla projected onto an outcome is
  // returned to |0> so it can be reused; every ancilla is projected onto
  // |0> once more at the end of a run.
  std::vector<PostselectStep> postselect_plan;

  int total_qubits() const { return num_system + num_ancilla; }
  void add(Gate g);
  // Append `other` with its qubit q mapped to qubit_map[q].
  void append(const Circuit& other, const std::vector<int>& qubit_map);
  void postselect_now(int qubit, int outcome = 0);
  Circuit inverse() const;
};

void apply_gate(StateVector& psi, const Gate& g);
// Applies gates only; the postselection plan is ignored.
void apply_gates(StateVector& psi, const Circuit& c);

// Projects onto `outcome` in place without renormalizing; returns the
// probability relative to the incoming norm.
double project(StateVector& psi, int qubit, int outcome);

struct Postselected {
  StateVector state;
  double probability = 0.0;
};

// Removes `qubit`, renormalizes, and multiplies `survival` by the
// probability. Throws AnnihilatedBranch when the probability is < 1e-15.
Postselected postselect(const StateVector& psi, int qubit, int outcome);

struct RunResult {
  StateVector state;  // normalized system state
  CVec unnormalized;  // system amplitudes before renormalization
  double probability = 0.0;
};

// Runs `c` on a system input with all ancillas in |0>, honoring the
// postselection plan.
RunResult run(const Circuit& c, const StateVector& system_input);

// Full unitary including the global phase; at most 14 qubits.
CMat circuit_unitary(const Circuit& c);
// Ancilla-|0> block of a circuit, honoring mid-circuit projections.
CMat block_matrix(const Circuit& c);

void apply_unitary(DensityMatrix& rho, const CMat& u);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

cplx expectation(const StateVector& psi, const CMat& observable);
double expectation(const DensityMatrix& rho, const CMat& observable);

struct PhaseFit {
  double phase = 0.0;          // a ~= exp(i phase) b
  double max_deviation = 0.0;  // max |a - exp(i phase) b| entrywise
};
PhaseFit compare_up_to_phase(const CMat& a, const CMat& b);
PhaseFit compare_up_to_phase(const CVec& a, const CVec& b);
// min over phi of the spectral norm of a - exp(i phi) b, for unitaries.
double spectral_distance_up_to_phase(const CMat& a, const CMat& b);

struct GateCounts {
  std::size_t one_qubit = 0;
  std::size_t two_qubit = 0;
  std::size_t multi_controlled = 0;
  std::size_t dense_multi_qubit = 0;
  std::size_t total() const {
    return one_qubit + two_qubit + multi_controlled + dense_multi_qubit;
  }
};
GateCounts count_gates(const Circuit& c);
// Number of layers when every gate starts as soon as its qubits are free.
std::size_t circuit_depth(const Circuit& c);

// Common single-qubit matrices.
CMat pauli_matrix(char p);
CMat hadamard();
CMat ry(double angle);             // exp(-i angle Y / 2)
CMat phase_gate(double angle);     // diag(1, exp(i angle))
CMat z_rotation(double angle);     // exp(i angle Z)

}  // namespace qpde
