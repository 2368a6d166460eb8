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

// Classical reference solvers. Everything here works in natural position
// order (dimension 0 slowest) and never touches circuits.

#pragma once

#include <functional>
#include <vector>

#include "qpde/grid.hpp"

namespace qpde::oracle {

enum class Stencil {
  Central,   // (f[l+1] - f[l-1]) N / 2
  Second,    // (f[l+1] - 2 f[l] + f[l-1]) N^2
  Forward,   // (f[l+1] - f[l]) N
};

// Periodic stencil acting on dimension `axis` of the grid.
CMat stencil_matrix(const GridSpec& grid, Stencil kind, int axis = 0);
// Sum of second-difference stencils over all dimensions.
CMat laplacian(const GridSpec& grid);

// Cyclic shift on dimension `axis`: (S f)[l] = f[l + 1].
CMat shift_matrix(const GridSpec& grid, int axis = 0);

// Centered Fourier transforms through FFTW. Wavenumber multi-indices use
// k = signed + N/2 per dimension, dimension 0 slowest.
CVec to_wavenumbers(const CVec& natural, const GridSpec& grid);
CVec from_wavenumbers(const CVec& modes, const GridSpec& grid);

using Symbol = std::function<cplx(const std::vector<double>& signed_k)>;

// F diag(symbol) F^dagger applied to a natural-order field.
CVec fft_evolve(const CVec& natural, const GridSpec& grid, const Symbol& symbol);

// Matrix exponential by scaling and squaring; dimension at most 1024.
CMat dense_expm(const CMat& m);
// SVD pseudo-inverse dropping singular values below rcond * max.
CMat dense_pinv(const CMat& m, double rcond = 1e-12);

}  // namespace qpde::oracle
