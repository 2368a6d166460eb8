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

// Shared plumbing for the spectral PDE solvers: a wavenumber-space block
// wrapped between inverse and forward QFTs, and runs on natural-order data.

#pragma once

#include <string>
#include <vector>

#include "qpde/blocks.hpp"

namespace qpde {

enum class Layout { Sequential, Parallel };

struct EvolutionCircuit {
  BlockEncoding block;  // acts on wavenumber registers
  Circuit full;         // F block F^dagger on position registers
  std::vector<FourierSeries> series;
  std::string route;
};

// Qubits of dimension `axis` within a register of d * n system qubits,
// optionally after `offset` leading qubits.
std::vector<int> register_qubits(const GridSpec& grid, int axis, int offset = 0);

Circuit wrap_in_fourier(const BlockEncoding& block, const GridSpec& grid, int offset = 0);

// One Fourier-series block per dimension, composed sequentially on a shared
// index register or in parallel on separate ones.
BlockEncoding per_dimension_series(const GridSpec& grid, const std::vector<FourierSeries>& series,
                                   const std::vector<Circuit>& controlled_phases, Layout layout);

struct FieldRun {
  CVec field;  // natural order, normalized
  double probability = 0.0;
  double scale = 1.0;
};

// Encodes natural-order data, runs `c` with postselection, decodes.
FieldRun run_on_field(const Circuit& c, const CVec& natural, const GridSpec& grid);

double fidelity(const CVec& a, const CVec& b);

}  // namespace qpde
