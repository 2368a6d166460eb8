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

#include "qpde/spectral.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace qpde {

namespace {

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

SpectralDiagonal derivative_diagonal(int n, int order, const DiagonalSpec& spec) {
  require(n >= 1 && n <= 30, "register size out of range");
  require(order == 1 || order == 2, "derivative order must be 1 or 2");
  if (spec.mode == DiagonalMode::Taylor) {
    require(spec.chi >= 1 && spec.chi % 2 == 1, "taylor order must be odd and positive");
  }
  const std::size_t nn = dim_of(n);
  const double dn = static_cast<double>(nn);
  SpectralDiagonal out;
  out.values.resize(nn);
  const double xs = 2.0 * kPi * spec.kstar / dn;
  for (std::size_t i = 0; i < nn; ++i) {
    const double k = static_cast<double>(i) - dn / 2.0;
    const double x = 2.0 * kPi * k / dn;
    double v = 0.0;
    switch (spec.mode) {
      case DiagonalMode::Exact:
        v = order == 1 ? dn * std::sin(x) : -4.0 * dn * dn * std::pow(std::sin(kPi * k / dn), 2);
        break;
      case DiagonalMode::SmallAngle:
        v = order == 1 ? 2.0 * kPi * k : -4.0 * kPi * kPi * k * k;
        break;
      case DiagonalMode::Taylor:
        if (order == 1) {
          for (int z = 0; 2 * z + 1 <= spec.chi; ++z) {
            v += (z % 2 == 0 ? 1.0 : -1.0) * std::pow(x, 2 * z + 1) / factorial(2 * z + 1);
          }
          v *= dn;
        } else {
          // -2 N^2 (1 - cos x), keeping powers up to chi + 1.
          for (int j = 1; 2 * j <= spec.chi + 1; ++j) {
            v += (j % 2 == 1 ? 1.0 : -1.0) * std::pow(x, 2 * j) / factorial(2 * j);
          }
          v *= -2.0 * dn * dn;
        }
        break;
      case DiagonalMode::AroundKstar: {
        const double h = x - xs;
        if (order == 1) {
          v = dn * (std::sin(xs) + std::cos(xs) * h - std::sin(xs) * h * h / 2.0);
        } else {
          v = -2.0 * dn * dn * ((1.0 - std::cos(xs)) + std::sin(xs) * h + std::cos(xs) * h * h / 2.0);
        }
        break;
      }
    }
    out.values[i] = order == 1 ? cplx{0.0, v} : cplx{v, 0.0};
  }
  static const char* kNames[] = {"exact", "small_angle", "taylor", "around_kstar"};
  out.label = fmt::format("order{}:{}", order, kNames[static_cast<int>(spec.mode)]);
  if (spec.mode == DiagonalMode::Taylor) out.label += fmt::format("({})", spec.chi);
  if (spec.mode == DiagonalMode::AroundKstar) out.label += fmt::format("({})", spec.kstar);
  return out;
}

std::vector<double> bessel_j_table(int max_order, double x) {
  require(max_order >= 0, "Bessel order must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double ax = std::abs(x);
  int start = static_cast<int>(std::max<double>(max_order, ax) + 30.0 + 12.0 * std::cbrt(ax));
  start += start % 2;
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[static_cast<std::size_t>(start)] = 1e-30;
  for (int k = start; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    j[ku - 1] = (2.0 * k / ax) * j[ku] - j[ku + 1];
    if (std::abs(j[ku - 1]) > 1e250) {
      for (std::size_t m = ku - 1; m < j.size(); ++m) j[m] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[static_cast<std::size_t>(k)];
  for (int k = 0; k <= max_order; ++k) {
    double v = j[static_cast<std::size_t>(k)] / norm;
    if (x < 0.0 && k % 2 == 1) v = -v;
    out[static_cast<std::size_t>(k)] = v;
  }
  return out;
}

double bessel_j(int order, double x) {
  const int m = std::abs(order);
  const double v = bessel_j_table(m, x)[static_cast<std::size_t>(m)];
  return (order < 0 && m % 2 == 1) ? -v : v;
}

cplx FourierSeries::coeff(int zeta) const {
  if (zeta < min_index || zeta > max_index()) return 0.0;
  return coeffs[static_cast<std::size_t>(zeta - min_index)];
}

cplx FourierSeries::evaluate(double theta) const {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    sum += coeffs[j] * std::polar(1.0, (min_index + static_cast<double>(j)) * theta);
  }
  return sum;
}

double FourierSeries::one_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::abs(c);
  return s;
}

FourierSeries jacobi_anger_coeffs(double lambda, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("jacobi_anger_coeffs needs eps > 0");
  FourierSeries s;
  s.unit = 1.0;
  s.variable = "theta";
  s.epsilon = eps;
  const double al = std::abs(lambda);
  const int max_d = static_cast<int>(al + 60.0 + 20.0 * std::cbrt(al + 1.0));
  const std::vector<double> j = bessel_j_table(max_d + 1, lambda);
  const int points = std::max(2048, 16 * (max_d + 1));
  std::vector<cplx> target(static_cast<std::size_t>(points));
  std::vector<cplx> partial(static_cast<std::size_t>(points), cplx{j[0], 0.0});
  std::vector<double> theta(static_cast<std::size_t>(points));
  for (int p = 0; p < points; ++p) {
    theta[static_cast<std::size_t>(p)] = 2.0 * kPi * p / points;
    target[static_cast<std::size_t>(p)] = std::polar(1.0, lambda * std::sin(theta[static_cast<std::size_t>(p)]));
  }
  auto sup_error = [&]() {
    double e = 0.0;
    for (std::size_t p = 0; p < partial.size(); ++p) e = std::max(e, std::abs(partial[p] - target[p]));
    return e;
  };
  int d = 0;
  double err = sup_error();
  while (err > eps) {
    ++d;
    if (d > max_d) {
      throw InvalidArgument(fmt::format("jacobi_anger_coeffs: eps={} unattainable (floor {:.3g})", eps, err));
    }
    const double jd = j[static_cast<std::size_t>(d)];
    const double jm = (d % 2 == 0) ? jd : -jd;
    for (std::size_t p = 0; p < partial.size(); ++p) {
      partial[p] += jd * std::polar(1.0, d * theta[p]) + jm * std::polar(1.0, -d * theta[p]);
    }
    err = sup_error();
  }
  s.D = d;
  s.min_index = -d;
  s.coeffs.resize(static_cast<std::size_t>(2 * d + 1));
  for (int z = -d; z <= d; ++z) {
    const double v = j[static_cast<std::size_t>(std::abs(z))];
    s.coeffs[static_cast<std::size_t>(z + d)] = (z < 0 && (-z) % 2 == 1) ? -v : v;
  }
  s.achieved_error = err;
  return s;
}

FourierSeries dft_series_of_diagonal(const std::vector<cplx>& values, double offset) {
  const int m = static_cast<int>(values.size());
  require(m >= 2 && m % 2 == 0, "DFT series needs an even number of grid values");
  FourierSeries s;
  s.unit = 2.0 * kPi / m;
  s.D = m / 2;
  s.min_index = -m / 2;
  s.coeffs.assign(static_cast<std::size_t>(m + 1), 0.0);
  for (int z = -m / 2; z < m / 2; ++z) {
    cplx c = 0.0;
    for (int j = 0; j < m; ++j) {
      c += values[static_cast<std::size_t>(j)] * std::polar(1.0, -s.unit * (offset + j) * z);
    }
    s.coeffs[static_cast<std::size_t>(z + m / 2)] = c / static_cast<double>(m);
  }
  double err = 0.0;
  for (int j = 0; j < m; ++j) {
    err = std::max(err, std::abs(s.evaluate(s.unit * (offset + j)) - values[static_cast<std::size_t>(j)]));
  }
  s.achieved_error = err;
  return s;
}

cplx GaussianQuadrature::evaluate(double s) const {
  double v = weight(0);
  for (int z = 1; z <= G; ++z) v += 2.0 * weight(z) * std::cos(c2 * z * s);
  return v;
}

GaussianQuadrature gaussian_fourier_coeffs(double t, double u, double scale, double eps,
                                           const std::vector<double>& s_points) {
  require(t >= 0.0 && u > 0.0, "gaussian quadrature needs t >= 0 and u > 0");
  require(eps > 0.0 && eps < 1.0, "gaussian quadrature needs 0 < eps < 1");
  require(!s_points.empty(), "gaussian quadrature needs evaluation points");
  GaussianQuadrature q;
  if (t == 0.0) {
    q.G = 0;
    q.c0 = 1.0;
    q.weights = {1.0};
    return q;
  }
  const double log_inv = std::log(1.0 / eps);
  const double rate = 4.0 * t * u * scale * scale;
  auto build = [&](double delta, int g) {
    GaussianQuadrature r;
    r.delta_omega = delta;
    r.G = g;
    r.c0 = delta / (4.0 * std::sqrt(kPi));
    r.c1 = delta * delta / 16.0;
    r.c2 = scale * std::sqrt(t * u) * delta;
    r.weights.resize(static_cast<std::size_t>(2 * g + 1));
    for (int z = -g; z <= g; ++z) {
      r.weights[static_cast<std::size_t>(z + g)] = r.c0 * std::exp(-r.c1 * z * z);
    }
    double err = 0.0;
    for (double s : s_points) err = std::max(err, std::abs(r.evaluate(s) - std::exp(-rate * s * s)));
    r.achieved_error = err;
    return r;
  };
  double delta = 1.0 / (scale * std::sqrt(t * u * log_inv));
  int g = std::max(1, static_cast<int>(std::ceil(scale * std::sqrt(t * u) * log_inv)));
  q = build(delta, g);
  for (int iter = 0; iter < 60 && q.achieved_error > eps; ++iter) {
    // Truncation tail relative to the target tolerance decides which knob.
    const double tail = std::exp(-q.c1 * static_cast<double>(g) * g);
    if (tail > eps / 4.0) {
      g *= 2;
    } else {
      delta /= 2.0;
      g *= 2;
    }
    q = build(delta, g);
  }
  if (q.achieved_error > eps) {
    throw InvalidArgument(fmt::format("gaussian quadrature did not reach eps={}", eps));
  }
  return q;
}

cplx InverseSeries::evaluate(double x) const {
  const double theta = dy * dz * x;
  return evaluate_with_units(std::polar(1.0, -theta), std::polar(1.0, theta));
}

cplx InverseSeries::evaluate_with_units(cplx down, cplx up) const {
  // sum_{z<G} b^z = (1 - b^G) / (1 - b), with b = down^e (e > 0) or up^|e|.
  auto geometric = [this](cplx b) -> cplx {
    const cplx one_minus = 1.0 - b;
    if (std::abs(one_minus) < 1e-9) {
      // Series expansion around b = 1 keeps precision for tiny angles.
      cplx sum = 0.0;
      cplx p = 1.0;
      for (int z = 0; z < G; ++z) {
        sum += p;
        p *= b;
      }
      return sum;
    }
    return (1.0 - std::pow(b, G)) / one_minus;
  };
  cplx total = 0.0;
  cplx dpow = 1.0;
  cplx upow = 1.0;
  for (int e = 1; e <= K; ++e) {
    dpow *= down;
    upow *= up;
    const double w = dz * dz * e * std::exp(-0.5 * (e * dz) * (e * dz));
    total += w * (geometric(dpow) - geometric(upow));
  }
  return kI / (16.0 * kappa * std::sqrt(2.0 * kPi)) * dy * total;
}

double inverse_series_error(const InverseSeries& s, int points) {
  double err = 0.0;
  const double lo = std::log(1.0 / s.kappa);
  for (int p = 0; p < points; ++p) {
    const double x = std::exp(lo * (1.0 - static_cast<double>(p) / (points - 1)));
    err = std::max(err, std::abs(s.evaluate(x) - 1.0 / (16.0 * s.kappa * x)));
  }
  return err;
}

InverseSeries inverse_fourier_params(double kappa, double eps) {
  require(kappa >= 1.0, "inverse series needs kappa >= 1");
  require(eps > 0.0 && eps < 1.0, "inverse series needs 0 < eps < 1");
  const double log_inv = std::log(1.0 / eps);
  InverseSeries s;
  s.kappa = kappa;
  s.epsilon = eps;
  s.G = static_cast<int>(std::ceil(log_inv / eps));
  s.K = static_cast<int>(std::ceil(kappa * log_inv));
  s.dy = kappa * eps / std::sqrt(log_inv);
  s.dz = 1.0 / (kappa * std::sqrt(log_inv));
  s.achieved_error = inverse_series_error(s, 200);
  for (int iter = 0; iter < 40 && s.achieved_error > eps; ++iter) {
    InverseSeries cand[4] = {s, s, s, s};
    cand[0].G *= 2;                  // longer y range
    cand[1].G *= 2, cand[1].dy /= 2;  // finer y grid
    cand[2].K *= 2;                  // longer z range
    cand[3].K *= 2, cand[3].dz /= 2;  // finer z grid
    for (auto& c : cand) c.achieved_error = inverse_series_error(c, 200);
    s = *std::min_element(std::begin(cand), std::end(cand), [](const auto& a, const auto& b) {
      return a.achieved_error < b.achieved_error;
    });
  }
  s.achieved_error = inverse_series_error(s, 1000);
  if (s.achieved_error > eps) {
    throw InvalidArgument(fmt::format("inverse series did not reach eps={}", eps));
  }
  return s;
}

std::string series_csv(const FourierSeries& s) {
  std::string out = "zeta,re,im\n";
  for (int z = s.min_index; z <= s.max_index(); ++z) {
    const cplx c = s.coeff(z);
    out += fmt::format("{},{:.17g},{:.17g}\n", z, c.real(), c.imag());
  }
  return out;
}

}  // namespace qpde
