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

#include "qpde/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include <unsupported/Eigen/MatrixFunctions>

namespace qpde::oracle {

namespace {

// Natural-order index -> per-dimension coordinates, dimension 0 first.
std::vector<std::size_t> coords(std::size_t flat, const GridSpec& grid) {
  const std::size_t nn = static_cast<std::size_t>(grid.N());
  std::vector<std::size_t> c(static_cast<std::size_t>(grid.d));
  for (int a = grid.d - 1; a >= 0; --a) {
    c[static_cast<std::size_t>(a)] = flat % nn;
    flat /= nn;
  }
  return c;
}

std::size_t stride_of(const GridSpec& grid, int axis) {
  std::size_t s = 1;
  for (int a = grid.d - 1; a > axis; --a) s *= static_cast<std::size_t>(grid.N());
  return s;
}

// FFTW planning is not thread safe.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

void fftw_inplace(CVec& v, const GridSpec& grid, int sign) {
  std::vector<int> dims(static_cast<std::size_t>(grid.d), static_cast<int>(grid.N()));
  auto* data = reinterpret_cast<fftw_complex*>(v.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft(grid.d, dims.data(), data, data, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

CMat stencil_matrix(const GridSpec& grid, Stencil kind, int axis) {
  grid.validate();
  require(axis >= 0 && axis < grid.d, "stencil axis out of range");
  require(grid.size() <= 4096, "dense stencil limited to 4096 points");
  const long nn = grid.N();
  const double dn = static_cast<double>(nn);
  const std::size_t stride = stride_of(grid, axis);
  const auto size = static_cast<Eigen::Index>(grid.size());
  CMat m = CMat::Zero(size, size);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t l = (i / stride) % static_cast<std::size_t>(nn);
    const std::size_t up = i - l * stride + ((l + 1) % static_cast<std::size_t>(nn)) * stride;
    const std::size_t down =
        i - l * stride + ((l + static_cast<std::size_t>(nn) - 1) % static_cast<std::size_t>(nn)) * stride;
    const auto r = static_cast<Eigen::Index>(i);
    switch (kind) {
      case Stencil::Central:
        m(r, static_cast<Eigen::Index>(up)) += dn / 2.0;
        m(r, static_cast<Eigen::Index>(down)) -= dn / 2.0;
        break;
      case Stencil::Second:
        m(r, static_cast<Eigen::Index>(up)) += dn * dn;
        m(r, static_cast<Eigen::Index>(down)) += dn * dn;
        m(r, r) -= 2.0 * dn * dn;
        break;
      case Stencil::Forward:
        m(r, static_cast<Eigen::Index>(up)) += dn;
        m(r, r) -= dn;
        break;
    }
  }
  return m;
}

CMat laplacian(const GridSpec& grid) {
  CMat l = stencil_matrix(grid, Stencil::Second, 0);
  for (int a = 1; a < grid.d; ++a) l += stencil_matrix(grid, Stencil::Second, a);
  return l;
}

CMat shift_matrix(const GridSpec& grid, int axis) {
  grid.validate();
  require(axis >= 0 && axis < grid.d, "shift axis out of range");
  const std::size_t nn = static_cast<std::size_t>(grid.N());
  const std::size_t stride = stride_of(grid, axis);
  const auto size = static_cast<Eigen::Index>(grid.size());
  CMat s = CMat::Zero(size, size);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t l = (i / stride) % nn;
    const std::size_t up = i - l * stride + ((l + 1) % nn) * stride;
    s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(up)) = 1.0;
  }
  return s;
}

CVec to_wavenumbers(const CVec& natural, const GridSpec& grid) {
  grid.validate();
  require(static_cast<std::size_t>(natural.size()) == grid.size(), "field size does not match grid");
  const ShiftSpec sh = ShiftSpec::centered(grid.n);
  const double dn = static_cast<double>(grid.N());
  CVec v = natural;
  // c_k = N^{-1/2} e^{-i2pi(k+a)b/N} sum_l e^{-i2pi k l/N} e^{-i2pi a l/N} f_l
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double ph = 0.0;
    for (std::size_t l : coords(i, grid)) ph -= 2.0 * kPi * sh.a * static_cast<double>(l) / dn;
    v(static_cast<Eigen::Index>(i)) *= std::polar(1.0, ph);
  }
  fftw_inplace(v, grid, FFTW_FORWARD);
  const double norm = std::pow(dn, -0.5 * grid.d);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double ph = 0.0;
    for (std::size_t k : coords(i, grid)) ph -= 2.0 * kPi * (static_cast<double>(k) + sh.a) * sh.b / dn;
    v(static_cast<Eigen::Index>(i)) *= std::polar(norm, ph);
  }
  return v;
}

CVec from_wavenumbers(const CVec& modes, const GridSpec& grid) {
  grid.validate();
  require(static_cast<std::size_t>(modes.size()) == grid.size(), "mode count does not match grid");
  const ShiftSpec sh = ShiftSpec::centered(grid.n);
  const double dn = static_cast<double>(grid.N());
  CVec v = modes;
  // f_l = N^{-1/2} e^{i2pi a(l+b)/N} sum_k e^{i2pi k l/N} e^{i2pi k b/N} c_k
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double ph = 0.0;
    for (std::size_t k : coords(i, grid)) ph += 2.0 * kPi * static_cast<double>(k) * sh.b / dn;
    v(static_cast<Eigen::Index>(i)) *= std::polar(1.0, ph);
  }
  fftw_inplace(v, grid, FFTW_BACKWARD);
  const double norm = std::pow(dn, -0.5 * grid.d);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double ph = 0.0;
    for (std::size_t l : coords(i, grid)) ph += 2.0 * kPi * sh.a * (static_cast<double>(l) + sh.b) / dn;
    v(static_cast<Eigen::Index>(i)) *= std::polar(norm, ph);
  }
  return v;
}

CVec fft_evolve(const CVec& natural, const GridSpec& grid, const Symbol& symbol) {
  CVec modes = to_wavenumbers(natural, grid);
  const double half = static_cast<double>(grid.N()) / 2.0;
  std::vector<double> signed_k(static_cast<std::size_t>(grid.d));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto c = coords(i, grid);
    for (std::size_t a = 0; a < c.size(); ++a) signed_k[a] = static_cast<double>(c[a]) - half;
    modes(static_cast<Eigen::Index>(i)) *= symbol(signed_k);
  }
  return from_wavenumbers(modes, grid);
}

CMat dense_expm(const CMat& m) {
  require(m.rows() == m.cols(), "dense_expm needs a square matrix");
  if (m.rows() > 1024) throw BudgetExceeded("dense_expm is limited to dimension 1024");
  return m.exp();
}

namespace {

template <class Svd>
CMat pinv_from(const Svd& svd, double rcond) {
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rcond * s(0) : 0.0;
  Eigen::VectorXd inv(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = s(i) > cutoff ? 1.0 / s(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace

CMat dense_pinv(const CMat& m, double rcond) {
  // Eigen 3.4.0 BDCSVD can return a wrong factorization for matrices with
  // highly repeated singular values, so it is only trusted when it
  // reconstructs the input.
  if (std::max(m.rows(), m.cols()) > 256) {
    Eigen::BDCSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const CMat back = svd.matrixU() * svd.singularValues().cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((back - m).cwiseAbs().maxCoeff() <= 1e-10 * scale) return pinv_from(svd, rcond);
  }
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return pinv_from(svd, rcond);
}

}  // namespace qpde::oracle
