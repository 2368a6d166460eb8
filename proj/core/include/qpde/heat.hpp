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

#include <optional>
#include <vector>

#include "qpde/evolution.hpp"

namespace qpde {

struct HeatProblem {
  GridSpec grid;
  double diffusivity = 1.0;
  double time = 0.0;
  double epsilon = 1e-6;
  std::optional<int> kmax;  // band limit for the smooth Gaussian route

  void validate() const;
};

struct HeatOracleResult {
  CVec state;  // normalized, natural order
  double probability = 1.0;
};

// Exact spectral evolution of the second-order stencil heat equation.
HeatOracleResult heat_oracle(const HeatProblem& problem, const CVec& f0);

// exp(-4 t u N^2 sin^2(pi k / N)) on one axis, indexed by register value.
std::vector<double> heat_kernel(const HeatProblem& problem);

struct HeatSeries {
  GaussianQuadrature quadrature;
  FourierSeries series;  // in theta = pi k / N
};

// Gaussian quadrature of the kernel composed with Jacobi-Anger expansions
// of each quadrature node; the result targets one axis within epsilon.
HeatSeries heat_gaussian_series(const HeatProblem& problem, double eps);

EvolutionCircuit build_heat_gaussian_ja(const HeatProblem& problem, Layout layout = Layout::Sequential);
EvolutionCircuit build_heat_dft(const HeatProblem& problem, Layout layout = Layout::Sequential);

struct PauliTerm {
  double theta = 0.0;
  PauliString pauli;  // qubits local to the register of `axis`
  int axis = 0;
};

struct HeatPauliCircuit {
  std::vector<PauliTerm> terms;
  // Indices into `terms`; blocks of one step act on disjoint qubits and
  // each gets its own ancilla, measured at the end of the step.
  std::vector<std::vector<std::size_t>> steps;
  EvolutionCircuit evolution;
  // Dropped scalar: the composed block is exp(-4 pi^2 t u khat^2) divided
  // by this prefactor and by exp(sum |theta|).
  double scalar_prefactor = 1.0;
  double theta_abs_sum = 0.0;
};

// Product of single- and two-qubit Z exponentials per axis.
HeatPauliCircuit build_heat_smooth_pauli(const HeatProblem& problem, Layout layout = Layout::Parallel);

// exp(-2 sum |theta|) |exp(sum theta P) f|^2 / |f|^2, computed on the diagonal.
double predicted_pauli_probability(const HeatProblem& problem, const CVec& f0);

struct HeatGaussianCircuit {
  GaussianQuadrature quadrature;
  EvolutionCircuit evolution;
};

// Quadrature directly in khat, calibrated on |k| <= kmax.
HeatGaussianCircuit build_heat_smooth_gaussian(const HeatProblem& problem);

}  // namespace qpde
