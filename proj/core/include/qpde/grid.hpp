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

#include "qpde/sim.hpp"

namespace qpde {

// Register conventions.
//
// A wavenumber register of n qubits holds k = sum_b 2^(n-1-b) k_b, so its
// first qubit is the most significant bit and the register value equals the
// flat sub-index. The signed wavenumber is k - N/2.
//
// A position register holds l = sum_b 2^b l_b, so its last qubit is the most
// significant bit of l. In flat storage the sub-index of position l is
// therefore bit_reverse(l, n). The QFT circuits below map wavenumber layout
// to position layout without swap gates; encode_positions/decode_positions
// convert between natural position order and register layout.

enum class GridConvention {
  Symmetric,     // x_l = -1/2 + 1/(2N) + l/N
  UnitInterval,  // x_l = l/N
};

struct GridSpec {
  int d = 1;
  int n = 1;
  GridConvention convention = GridConvention::Symmetric;

  long N() const { return 1L << n; }
  std::size_t size() const { return dim_of(d * n); }
  int qubits() const { return d * n; }
  double spacing() const { return 1.0 / static_cast<double>(N()); }
  std::vector<double> positions() const;
  void validate() const;
};

// Exponent offsets of the shifted transform
//   <l|F|k> = exp(i 2 pi (k + a)(l + b) / N) / sqrt(N).
struct ShiftSpec {
  double a = 0.0;
  double b = 0.0;
  // a = -N/2, b = -(N-1)/2: the transform between the symmetric grid and
  // signed wavenumbers.
  static ShiftSpec centered(int n);
};

// Signed wavenumbers k - N/2 indexed by register value.
std::vector<double> khat_diagonal(int n);
// Diagonal of khat + N (1 - Z)/2 on n + 1 qubits, where the extra qubit is
// the most significant one: value l - N/2 for register value l.
std::vector<double> lhat_diagonal(int n);

// Shifted QFT on n qubits, wavenumber layout in, position layout out. The
// constant phase exp(i 2 pi a b / N) is not included.
Circuit build_shifted_qft(int n, const ShiftSpec& shifts);
// Same, with controlled rotations of |angle| < threshold dropped.
Circuit build_approx_qft(int n, const ShiftSpec& shifts, double threshold);
// One shifted QFT per dimension; dimension a occupies qubits [a n, (a+1) n).
Circuit tensor_qft_d(const GridSpec& grid, const ShiftSpec& shifts);

// Closed-form matrix of the shifted transform in register layout (rows are
// flat position sub-indices), including the constant phase.
CMat shifted_fourier_matrix(int n, const ShiftSpec& shifts);

// Flat register index of a natural-order multi-index (dimension 0 slowest).
std::size_t position_register_index(std::size_t natural, const GridSpec& grid);
CVec encode_positions(const CVec& natural, const GridSpec& grid);
CVec decode_positions(const CVec& registers, const GridSpec& grid);
// Permute a natural-order operator into register layout.
CMat operator_to_register_layout(const CMat& natural, const GridSpec& grid);

enum class Boundary { Dirichlet, Neumann };

struct BoundaryExtension {
  Circuit circuit;    // n + 1 system qubits, the new qubit last
  StateVector state;  // doubled register, position layout
};

// Odd (Dirichlet) or even (Neumann) extension of a position-layout state on
// n qubits to 2N points, reflecting l -> 2N - 1 - l.
BoundaryExtension boundary_extension(const StateVector& field, Boundary kind);

}  // namespace qpde
