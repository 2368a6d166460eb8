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

#include <vector>

#include "qpde/evolution.hpp"

namespace qpde {

struct AdvectionProblem {
  GridSpec grid;
  std::vector<double> velocity;  // one per dimension
  double time = 0.0;
  double epsilon = 1e-6;

  void validate() const;
  double max_speed() const;
};

// Exact spectral evolution of central-difference advection, natural order.
CVec advect_oracle(const AdvectionProblem& problem, const CVec& f0);

// exp(-i t N r sin(2 pi k / N)) on one axis, indexed by register value.
std::vector<cplx> advection_symbol(const AdvectionProblem& problem, int axis);

EvolutionCircuit build_advection_ja(const AdvectionProblem& problem, Layout layout = Layout::Sequential);
EvolutionCircuit build_advection_dft(const AdvectionProblem& problem, Layout layout = Layout::Sequential);
// Ancilla-free exp(-i 2 pi t r khat) per axis.
EvolutionCircuit build_advection_smooth(const AdvectionProblem& problem);

}  // namespace qpde
