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

namespace qpde {

// Non-negative values f summing to 1 on the diagonal of a density matrix,
// natural grid order on the unit-interval grid.
struct DiagonalEncoding {
  DensityMatrix rho;
  GridSpec grid;

  static DiagonalEncoding from_values(const std::vector<double>& f, GridSpec grid);
  std::vector<double> values() const;
  double off_diagonal_mass() const;
};

enum class JumpKind { Shift, ShiftAdjoint };

// prefactor * S or prefactor * S^dagger on one axis, S|l> = |l - 1> with
// periodic wrap.
struct JumpOperator {
  JumpKind kind = JumpKind::Shift;
  double prefactor = 1.0;
  int axis = 0;

  CMat matrix(const GridSpec& grid) const;
};

// sqrt(u) N S_a and sqrt(u) N S_a^dagger for every axis, axis by axis.
std::vector<JumpOperator> heat_jumps(const GridSpec& grid, double diffusivity);
// sqrt(r N) S_a per axis; the speeds must be non-negative.
std::vector<JumpOperator> advection_jumps(const GridSpec& grid, const std::vector<double>& speeds);

// sum_j L rho L^dagger - {L^dagger L, rho} / 2.
CMat dissipator(const CMat& rho, const std::vector<JumpOperator>& jumps, const GridSpec& grid);

// exp(-i sqrt(tau) K) with K = L (x) |1><0| + L^dagger (x) |0><1|, the
// ancilla as the last qubit, natural grid order.
CMat dilation_unitary_dense(const GridSpec& grid, const JumpOperator& jump, double tau);

// Same unitary in register layout: Fourier transform of the jump axis, a
// Z-rotation ladder coupling that register to the ancilla around an X
// rotation of the ancilla, and the inverse transform.
Circuit dilation_circuit(const GridSpec& grid, const JumpOperator& jump, double tau);

// Kraus operators <a| U |0> of the traced dilation, natural grid order.
std::vector<CMat> dilation_kraus(const GridSpec& grid, const JumpOperator& jump, double tau);

// One dilation and ancilla trace.
DensityMatrix dilation_step(const DensityMatrix& rho, const GridSpec& grid, const JumpOperator& jump, double tau);

struct LindbladRun {
  DiagonalEncoding state;
  std::vector<std::vector<double>> trajectory;  // diagonal after each full step, the input first
  double max_off_diagonal = 0.0;
  double min_diagonal = 0.0;
  double max_trace_deviation = 0.0;
  int steps = 0;
};

// `steps` rounds of all jumps in order, each dilated with tau = t / steps.
LindbladRun evolve_lindblad(const DiagonalEncoding& initial, const std::vector<JumpOperator>& jumps, double t,
                            int steps);

LindbladRun evolve_lindblad_heat(const std::vector<double>& f0, const GridSpec& grid, double diffusivity,
                                 double t, int steps);

// Classical reference exp(t u Laplacian) f0 on the same grid.
std::vector<double> classical_heat(const std::vector<double>& f0, const GridSpec& grid, double diffusivity,
                                   double t);

double l1_distance(const std::vector<double>& a, const std::vector<double>& b);

struct StepCalibration {
  int steps = 0;
  double distance = 0.0;
};

// Doubles the step count from `start` until the L1 distance to the classical
// heat solution is at most tol.
StepCalibration calibrate_heat_steps(const std::vector<double>& f0, const GridSpec& grid, double diffusivity,
                                     double t, double tol, int start = 1, int max_steps = 1 << 16);

// step,l,f rows.
std::string trajectory_csv(const LindbladRun& run);

}  // namespace qpde
