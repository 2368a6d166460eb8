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

#include "app/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "qpde/advection.hpp"
#include "qpde/heat.hpp"
#include "qpde/lindblad.hpp"
#include "qpde/oracle.hpp"
#include "qpde/poisson.hpp"
#include "qpde/wave.hpp"

namespace qpde::app {

Budget resolve_budget(std::optional<int> flag) {
  Budget b;
  if (flag) {
    b.statevector_qubits = *flag;
  } else if (const char* env = std::getenv("QPDE_BUDGET")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError(fmt::format("QPDE_BUDGET='{}' is not a positive integer", env));
    b.statevector_qubits = static_cast<int>(v);
  }
  if (b.statevector_qubits < 1) throw ConfigError("budget must be positive");
  return b;
}

namespace {

// Dense operator checks are skipped above this many qubits.
constexpr int kDenseQubits = 12;

class ZeroModeInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Default tolerances per route family.
struct Defaults {
  double fidelity;
  double probability;
  double operator_distance;
};

void fill_gates(GateSummary& g, const Circuit& c) {
  const GateCounts counts = count_gates(c);
  g.one_qubit = counts.one_qubit;
  g.two_qubit = counts.two_qubit;
  g.multi_controlled = counts.multi_controlled;
  g.dense_multi_qubit = counts.dense_multi_qubit;
  g.total = counts.total();
  g.depth = circuit_depth(c);
  g.system_qubits = c.num_system;
  g.ancillas = c.num_ancilla;
}

void fill_series(GateSummary& g, const EvolutionCircuit& ev) {
  for (const auto& s : ev.series) g.series_degree = std::max({g.series_degree, s.D, s.max_index()});
  g.select_queries = ev.block.oracle_queries;
  g.scale = ev.block.scale;
}

void check_budget(const Circuit& c, const Budget& budget) {
  if (c.total_qubits() > budget.statevector_qubits) {
    throw BudgetExceeded(fmt::format("circuit needs {} qubits, budget is {}", c.total_qubits(),
                                     budget.statevector_qubits));
  }
}

// Per-axis register-indexed values multiplied over all axes.
std::vector<cplx> tensor_symbol(const GridSpec& grid, const std::function<cplx(double)>& axis_value) {
  const auto k = khat_diagonal(grid.n);
  const std::size_t nn = static_cast<std::size_t>(grid.N());
  std::vector<cplx> out(grid.size(), 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::size_t rest = i;
    for (int a = 0; a < grid.d; ++a) {
      out[i] *= axis_value(k[rest % nn]);
      rest /= nn;
    }
  }
  return out;
}

std::vector<bool> band_mask(const GridSpec& grid, std::optional<int> kmax) {
  std::vector<bool> mask(grid.size(), true);
  if (!kmax) return mask;
  const auto kabs = max_abs_wavenumber(grid);
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = kabs[i] <= *kmax;
  return mask;
}

// Distance of the wavenumber-space block (times `factor`) from a diagonal
// target, over the masked indices; off-diagonal entries count everywhere.
std::optional<double> symbol_distance(const BlockEncoding& b, double factor, const std::vector<cplx>& target,
                                      const std::vector<bool>& mask) {
  if (b.circuit.total_qubits() > kDenseQubits) return std::nullopt;
  const CMat m = block_matrix(b.circuit) * (b.scale * factor);
  double err = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) {
        err = std::max(err, std::abs(m(i, j)));
      } else if (mask[static_cast<std::size_t>(i)]) {
        err = std::max(err, std::abs(m(i, i) - target[static_cast<std::size_t>(i)]));
      }
    }
  }
  return err;
}

double squared_norm_after(const std::vector<cplx>& symbol, const CVec& f, const GridSpec& grid) {
  return apply_symbol(symbol, f, grid).squaredNorm();
}

struct Outcome {
  Defaults defaults{1e-9, 1e-9, 1e-9};
};

void run_evolution(VerificationReport& r, const EvolutionCircuit& ev, const CVec& f0, const CVec& oracle_state,
                      double predicted, const Budget& budget) {
  check_budget(ev.full, budget);
  fill_gates(r.gates, ev.full);
  fill_series(r.gates, ev);
  const FieldRun run = run_on_field(ev.full, f0, r.grid);
  r.state_fidelity = fidelity(run.field, oracle_state);
  r.survival_measured = run.probability;
  r.survival_predicted = predicted;
  r.field = run.field;
}

Outcome verify_advection(VerificationReport& r, const ExperimentConfig& c, const CVec& f0, const Budget& budget) {
  AdvectionProblem p{c.grid, c.r, c.t, c.epsilon};
  p.validate();
  CVec want = advect_oracle(p, f0);
  const double nn = static_cast<double>(c.grid.N());
  EvolutionCircuit ev;
  std::vector<cplx> target;
  Outcome o;
  if (c.method == "smooth") {
    ev = build_advection_smooth(p);
    target.assign(c.grid.size(), 1.0);
    const auto k = khat_diagonal(c.grid.n);
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      std::size_t rest = i;
      double phase = 0.0;
      for (int a = c.grid.d - 1; a >= 0; --a) {
        phase -= 2.0 * kPi * c.t * c.r[static_cast<std::size_t>(a)] * k[rest % static_cast<std::size_t>(nn)];
        rest /= static_cast<std::size_t>(nn);
      }
      target[i] = std::polar(1.0, phase);
    }
    // The smooth route follows the continuum equation, not the stencil.
    want = apply_symbol(target, f0, c.grid).normalized();
  } else {
    ev = c.method == "dft" ? build_advection_dft(p) : build_advection_ja(p);
    target.assign(c.grid.size(), 1.0);
    for (int a = 0; a < c.grid.d; ++a) {
      const auto sym = advection_symbol(p, a);
      const std::size_t stride = static_cast<std::size_t>(std::pow(nn, c.grid.d - 1 - a));
      for (std::size_t i = 0; i < c.grid.size(); ++i) target[i] *= sym[(i / stride) % static_cast<std::size_t>(nn)];
    }
  }
  const double predicted = 1.0 / (ev.block.scale * ev.block.scale);
  run_evolution(r, ev, f0, want, predicted, budget);
  r.operator_distance = symbol_distance(ev.block, 1.0, target, band_mask(c.grid, std::nullopt));
  if (c.method == "jacobi_anger") o.defaults = {c.epsilon, 4.0 * c.epsilon * predicted, c.epsilon};
  return o;
}

Outcome verify_heat(VerificationReport& r, const ExperimentConfig& c, const CVec& f0, const Budget& budget) {
  HeatProblem p{c.grid, c.u, c.t, c.epsilon, c.kmax};
  p.validate();
  const HeatOracleResult want = heat_oracle(p, f0);
  Outcome o;
  const auto continuum = tensor_symbol(c.grid, [&](double k) { return cplx(std::exp(-4.0 * kPi * kPi * c.t * c.u * k * k)); });
  const CVec continuum_state = apply_symbol(continuum, f0, c.grid).normalized();
  if (c.method == "smooth_pauli") {
    const HeatPauliCircuit hp = build_heat_smooth_pauli(p);
    run_evolution(r, hp.evolution, f0, continuum_state, predicted_pauli_probability(p, f0), budget);
    r.operator_distance =
        symbol_distance(hp.evolution.block, hp.scalar_prefactor, continuum, band_mask(c.grid, std::nullopt));
    return o;
  }
  if (c.method == "smooth_gaussian") {
    if (!c.kmax) throw ConfigError("heat smooth_gaussian needs kmax");
    const HeatGaussianCircuit hg = build_heat_smooth_gaussian(p);
    const double s = hg.evolution.block.scale;
    run_evolution(r, hg.evolution, f0, continuum_state, squared_norm_after(continuum, f0, c.grid) / (s * s), budget);
    r.operator_distance = symbol_distance(hg.evolution.block, 1.0, continuum, band_mask(c.grid, c.kmax));
    // Modes above kmax are not controlled, so the state check is loose.
    o.defaults = {1e-3, 4.0 * c.epsilon * *r.survival_predicted, c.epsilon};
    return o;
  }
  const EvolutionCircuit ev = c.method == "dft" ? build_heat_dft(p) : build_heat_gaussian_ja(p);
  const auto kernel = heat_kernel(p);
  const double nn = static_cast<double>(c.grid.N());
  std::vector<cplx> target(c.grid.size(), 1.0);
  for (int a = 0; a < c.grid.d; ++a) {
    const std::size_t stride = static_cast<std::size_t>(std::pow(nn, c.grid.d - 1 - a));
    for (std::size_t i = 0; i < c.grid.size(); ++i) target[i] *= kernel[(i / stride) % static_cast<std::size_t>(nn)];
  }
  const double s = ev.block.scale;
  run_evolution(r, ev, f0, want.state, want.probability / (s * s), budget);
  r.operator_distance = symbol_distance(ev.block, 1.0, target, band_mask(c.grid, std::nullopt));
  if (c.method == "gaussian_jacobi_anger") {
    o.defaults = {c.epsilon, 4.0 * c.epsilon * *r.survival_predicted, c.epsilon};
  }
  return o;
}

CVec mean_free(const CVec& f) {
  CVec g = f;
  g.array() -= f.mean();
  return g;
}

// Exact exp(-i 2 pi t sum gamma_a (x) khat_a) in the layout of the smooth
// route's wavenumber-space circuit, conjugated by the same transforms.
CMat smooth_wave_reference(const GridSpec& g, const GammaSet& gam, double scaled_time) {
  const auto grid = static_cast<Eigen::Index>(g.size());
  const auto dim = static_cast<Eigen::Index>(dim_of(gam.qubits));
  const auto kh = khat_diagonal(g.n);
  const long nn = g.N();
  CMat w = CMat::Zero(dim * grid, dim * grid);
  for (Eigen::Index i = 0; i < grid; ++i) {
    std::vector<double> k;
    for (int a = 0; a < g.d; ++a) k.push_back(kh[static_cast<std::size_t>((i >> ((g.d - 1 - a) * g.n)) & (nn - 1))]);
    // The one-dimensional circuit diagonalizes its single gamma as Z.
    const CMat block = g.d == 1 ? CMat(CVec{{std::polar(1.0, -2.0 * kPi * scaled_time * k[0]),
                                            std::polar(1.0, 2.0 * kPi * scaled_time * k[0])}}
                                           .asDiagonal())
                                : wave_mode_evolution(gam, k, scaled_time);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) w(r * grid + i, c * grid + i) = block(r, c);
    }
  }
  Circuit p(gam.qubits + g.qubits());
  if (g.d == 1) p.add(make_gate({0}, hadamard(), {}, "H"));
  std::vector<int> fmap(static_cast<std::size_t>(g.qubits()));
  for (int q = 0; q < g.qubits(); ++q) fmap[static_cast<std::size_t>(q)] = gam.qubits + q;
  p.append(tensor_qft_d(g, ShiftSpec::centered(g.n)), fmap);
  const CMat u = circuit_unitary(p);
  return u * w * u.adjoint();
}

Outcome verify_wave(VerificationReport& r, const ExperimentConfig& c, const CVec& f0, const Budget& budget) {
  const GridSpec& g = c.grid;
  const GammaSet gam = gamma_ternary_tree(g.d);
  const double vt = c.v * c.t;
  Outcome o;
  if (c.method == "smooth") {
    const WaveSmoothCircuit s = build_wave_smooth(g.d, g.n, vt, g.d == 1 ? 0.0 : c.tau);
    check_budget(s.full, budget);
    fill_gates(r.gates, s.full);
    r.gates.series_degree = s.layers;
    // Gamma sector 0 carries the field.
    CVec psi0 = CVec::Zero(static_cast<Eigen::Index>(dim_of(gam.qubits) * g.size()));
    psi0.head(static_cast<Eigen::Index>(g.size())) = encode_positions(f0, g);
    const RunResult run = qpde::run(s.full, StateVector::from_amplitudes(psi0));
    r.survival_measured = run.probability;
    r.survival_predicted = 1.0;
    if (s.full.total_qubits() <= kDenseQubits) {
      const CMat ref = smooth_wave_reference(g, gam, vt);
      r.state_fidelity = fidelity(run.state.amplitudes, ref * psi0);
      const int kmax = c.kmax.value_or(static_cast<int>(g.N() / 2));
      if (g.d > 1) {
        r.operator_distance = wave_trotter_error(g.d, g.n, vt, c.tau, kmax);
      } else {
        r.operator_distance = (circuit_unitary(s.full) - ref).cwiseAbs().maxCoeff();
      }
    }
    r.field = decode_positions(run.state.amplitudes.head(static_cast<Eigen::Index>(g.size())), g);
    if (g.d > 1) o.defaults = {2.0 * c.epsilon, 1e-9, c.epsilon};
    return o;
  }
  if (g.d != 1) throw ConfigError(fmt::format("wave {} is one-dimensional", c.method));
  const CMat h = wave_hamiltonian(gam, g, c.v);
  // The mean lies in the kernel of H and cannot be encoded with zero initial velocity.
  const CVec f = mean_free(f0);
  if (f.norm() <= 1e-12) throw ZeroModeInput("wave initial field has no mean-free part");
  const WaveEncoding e = encode_initial(WaveVariant::A, 0, f, CVec::Zero(f.size()), h, gam.qubits);
  const CVec want = evolve_wave_oracle(h, e.state, c.t);
  const EvolutionCircuit ev = c.method == "dft_1d" ? build_wave_1d_dft(g.n, vt) : build_wave_1d_ja(g.n, vt, c.epsilon);
  check_budget(ev.full, budget);
  fill_gates(r.gates, ev.full);
  fill_series(r.gates, ev);
  r.survival_predicted = 1.0 / (ev.block.scale * ev.block.scale);
  if (ev.full.total_qubits() <= kDenseQubits) {
    const CMat u = wave_operator_to_register_layout(oracle::dense_expm(-kI * c.t * h), gam.qubits, g);
    r.operator_distance = (block_matrix(ev.full) * ev.block.scale - u).cwiseAbs().maxCoeff();
  }
  if (c.method == "jacobi_anger_1d") o.defaults = {c.epsilon, 4.0 * c.epsilon * *r.survival_predicted, c.epsilon};
  const RunResult run = qpde::run(ev.full, StateVector::from_amplitudes(wave_to_register_layout(e.state, gam.qubits, g)));
  const CVec psi = wave_from_register_layout(run.state.amplitudes, gam.qubits, g);
  r.state_fidelity = fidelity(psi, want);
  r.survival_measured = run.probability;
  const PhaseFit fit = compare_up_to_phase(psi, want);
  const WaveFields w = decode_wave(WaveVariant::A, 0, psi * std::polar(1.0, -fit.phase), h, gam.qubits, e.norm);
  r.field = w.f;
  return o;
}

Outcome verify_poisson(VerificationReport& r, const ExperimentConfig& c, const CVec& g0, const Budget& budget) {
  PoissonProblem p{c.grid, c.epsilon, c.kmax};
  p.validate();
  if (mean_free(g0).norm() <= 1e-12 * g0.norm()) throw ZeroModeInput("right-hand side lies entirely in the zero mode");
  const PoissonOracleResult want = poisson_oracle(p, g0);
  Outcome o;
  if (c.method == "dft_1d") {
    const EvolutionCircuit ev = build_poisson_1d_dft(p);
    const auto pinv = laplacian_pinv_symbol(c.grid);
    const double s = ev.block.scale;
    run_evolution(r, ev, g0, want.state, want.probability / (s * s), budget);
    r.operator_distance = symbol_distance(ev.block, 1.0, {pinv.begin(), pinv.end()}, band_mask(c.grid, std::nullopt));
    return o;
  }
  const PoissonInverse inv = c.method == "smooth" ? build_poisson_smooth(p) : build_poisson_ddim(p);
  fill_gates(r.gates, inv.unit.circuit);
  r.gates.select_queries = static_cast<std::size_t>(inv.outer_terms);
  r.gates.series_terms = inv.outer_terms;
  r.gates.series_degree = inv.outer.K;
  const CVec f = apply_symbol(inv.symbol, g0, c.grid);
  r.field = f / f.norm();
  r.state_fidelity = fidelity(r.field, want.state);
  r.operator_distance = inv.achieved_error;
  if (c.method == "smooth") {
    if (!c.kmax) throw ConfigError("poisson smooth needs kmax");
    o.defaults = {1e-3, 0.0, c.epsilon / (4.0 * kPi * kPi)};
  } else {
    double norm = 0.0;
    for (double v : laplacian_pinv_symbol(c.grid)) norm = std::max(norm, std::abs(v));
    o.defaults = {c.epsilon, 0.0, c.epsilon * norm};
  }
  return o;
}

Outcome verify_lindblad(VerificationReport& r, const ExperimentConfig& c, const CVec& f0, const Budget& budget) {
  GridSpec g = c.grid;
  g.convention = GridConvention::UnitInterval;
  if (g.qubits() + 1 > budget.density_qubits) {
    throw BudgetExceeded(fmt::format("density matrix needs {} qubits, budget is {}", g.qubits() + 1,
                                     budget.density_qubits));
  }
  // Probabilities |f0|^2 of the configured profile.
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::norm(f0(static_cast<Eigen::Index>(i)));
  const int steps = c.steps ? *c.steps : calibrate_heat_steps(f, g, c.u, c.t, c.epsilon).steps;
  const LindbladRun run = evolve_lindblad_heat(f, g, c.u, c.t, steps);
  const auto want = classical_heat(f, g, c.u, c.t);
  const auto got = run.state.values();
  r.l1_distance = l1_distance(got, want);
  double overlap = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) overlap += std::sqrt(std::max(got[i], 0.0) * std::max(want[i], 0.0));
  r.state_fidelity = std::min(1.0, overlap * overlap);
  r.survival_measured = run.state.rho.trace().real();
  r.survival_predicted = 1.0;
  const auto jumps = heat_jumps(g, c.u);
  fill_gates(r.gates, dilation_circuit(g, jumps[0], c.t / steps));
  const double per_step = static_cast<double>(jumps.size() * static_cast<std::size_t>(steps));
  r.gates.total = static_cast<std::size_t>(static_cast<double>(r.gates.total) * per_step);
  r.gates.one_qubit = static_cast<std::size_t>(static_cast<double>(r.gates.one_qubit) * per_step);
  r.gates.two_qubit = static_cast<std::size_t>(static_cast<double>(r.gates.two_qubit) * per_step);
  r.gates.depth = static_cast<std::size_t>(static_cast<double>(r.gates.depth) * per_step);
  r.gates.series_degree = steps;
  r.field = CVec(static_cast<Eigen::Index>(got.size()));
  for (std::size_t i = 0; i < got.size(); ++i) r.field(static_cast<Eigen::Index>(i)) = got[i];
  return {{1.0, 1e-10, c.epsilon}};
}

void apply_checks(VerificationReport& r, const ExperimentConfig& c, const Defaults& d) {
  const double fid_tol = c.tolerance.fidelity.value_or(d.fidelity);
  const double prob_tol = c.tolerance.probability.value_or(d.probability);
  const double op_tol = c.tolerance.operator_distance.value_or(d.operator_distance);
  if (r.state_fidelity && 1.0 - *r.state_fidelity > fid_tol) {
    r.failed_checks.push_back(fmt::format("state_fidelity {:.6g} below 1 - {:.3g}", *r.state_fidelity, fid_tol));
  }
  if (r.survival_measured && r.survival_predicted &&
      std::abs(*r.survival_measured - *r.survival_predicted) > prob_tol) {
    r.failed_checks.push_back(fmt::format("survival {:.6g} differs from prediction {:.6g} by more than {:.3g}",
                                          *r.survival_measured, *r.survival_predicted, prob_tol));
  }
  const double dist = r.l1_distance ? *r.l1_distance : r.operator_distance.value_or(0.0);
  if (dist > op_tol) {
    r.failed_checks.push_back(fmt::format("{} {:.6g} above {:.3g}", r.l1_distance ? "l1_distance" : "operator_distance",
                                          dist, op_tol));
  }
  if (!r.failed_checks.empty()) r.status = "tolerance_failure";
}

}  // namespace

VerificationReport verify(const ExperimentConfig& config, const Budget& budget) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.config = config_to_json(config);
  r.grid = config.grid;
  try {
    // Reject oversized grids before any circuit or oracle is built.
    if (config.pde != "lindblad" && config.grid.qubits() > budget.statevector_qubits) {
      throw BudgetExceeded(fmt::format("grid needs {} qubits, budget is {}", config.grid.qubits(),
                                       budget.statevector_qubits));
    }
    config.grid.validate();
    const CVec f0 = initial_field(config);
    Outcome o;
    if (config.pde == "advection") {
      o = verify_advection(r, config, f0, budget);
    } else if (config.pde == "heat") {
      o = verify_heat(r, config, f0, budget);
    } else if (config.pde == "wave") {
      o = verify_wave(r, config, f0, budget);
    } else if (config.pde == "poisson") {
      o = verify_poisson(r, config, f0, budget);
    } else {
      o = verify_lindblad(r, config, f0, budget);
    }
    if (r.state_fidelity) r.state_fidelity = std::clamp(*r.state_fidelity, 0.0, 1.0);
    apply_checks(r, config, o.defaults);
  } catch (const ConfigError& e) {
    r.status = "error", r.error_kind = "config", r.message = e.what();
  } catch (const ZeroModeInput& e) {
    r.status = "error", r.error_kind = "zero_mode_input", r.message = e.what();
  } catch (const BudgetExceeded& e) {
    r.status = "error", r.error_kind = "budget_exceeded", r.message = e.what();
  } catch (const Error& e) {
    r.status = "error", r.error_kind = "invalid_argument", r.message = e.what();
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["status"] = r.status;
  if (!r.error_kind.empty()) j["error"] = {{"kind", r.error_kind}, {"message", r.message}};
  j["operator_distance"] = optional_json(r.operator_distance);
  j["state_fidelity"] = optional_json(r.state_fidelity);
  j["survival_probability"] = {{"measured", optional_json(r.survival_measured)},
                               {"predicted", optional_json(r.survival_predicted)}};
  if (r.l1_distance) j["l1_distance"] = *r.l1_distance;
  const GateSummary& g = r.gates;
  j["gate_counts"] = {{"one_qubit", g.one_qubit},
                      {"two_qubit", g.two_qubit},
                      {"multi_controlled", g.multi_controlled},
                      {"dense_multi_qubit", g.dense_multi_qubit},
                      {"total", g.total},
                      {"depth", g.depth},
                      {"system_qubits", g.system_qubits},
                      {"ancillas", g.ancillas},
                      {"series_degree", g.series_degree},
                      {"select_queries", g.select_queries},
                      {"series_terms", g.series_terms},
                      {"scale", g.scale}};
  j["failed_checks"] = r.failed_checks;
  j["config"] = r.config;
  return j;
}

Json timing_to_json(const VerificationReport& r) { return {{"wall_time_seconds", r.wall_time}}; }

int exit_code(const VerificationReport& r) {
  if (r.status == "ok") return 0;
  if (r.status == "tolerance_failure") return 1;
  if (r.error_kind == "config") return 2;
  if (r.error_kind == "budget_exceeded") return 3;
  return 4;
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes{"n", "t", "epsilon", "d", "kmax"};
  return axes;
}

ExperimentConfig with_axis_value(const ExperimentConfig& c, const std::string& axis, double value) {
  ExperimentConfig out = c;
  auto as_int = [&](double v) {
    if (v != std::round(v)) throw ConfigError(fmt::format("sweep axis {} needs integer values", axis));
    return static_cast<int>(v);
  };
  if (axis == "n") {
    out.grid.n = as_int(value);
  } else if (axis == "t") {
    out.t = value;
  } else if (axis == "epsilon") {
    out.epsilon = value;
  } else if (axis == "kmax") {
    out.kmax = as_int(value);
    if (out.initial.profile == "band_limited") out.initial.kmax = *out.kmax;
  } else if (axis == "d") {
    // Per-axis settings follow the first axis.
    const int d = as_int(value);
    auto resize = [d](auto& v) {
      if (!v.empty()) v.assign(static_cast<std::size_t>(d), v.front());
    };
    out.grid.d = d;
    resize(out.r);
    resize(out.initial.k);
    resize(out.initial.center);
    resize(out.initial.index);
  } else {
    throw ConfigError(fmt::format("unknown sweep axis '{}'", axis));
  }
  return out;
}

SweepResult sweep(const ExperimentConfig& c, const std::string& axis, const std::vector<double>& values,
                  const Budget& budget) {
  SweepResult s;
  s.axis = axis;
  for (double v : values) {
    SweepRow row;
    row.value = v;
    try {
      row.report = verify(with_axis_value(c, axis, v), budget);
    } catch (const ConfigError& e) {
      row.report.status = "error", row.report.error_kind = "config", row.report.message = e.what();
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? fmt::format("{:.12g}", *v) : std::string(); }

}  // namespace

std::string SweepResult::csv() const {
  std::string out = "axis_value,gate_total,ancillas,D,fidelity,p,select_queries,depth,series_terms,status\n";
  for (const auto& row : rows) {
    const GateSummary& g = row.report.gates;
    out += fmt::format("{:.12g},{},{},{},{},{},{},{},{:.12g},{}\n", row.value, g.total, g.ancillas, g.series_degree,
                       cell(row.report.state_fidelity), cell(row.report.survival_measured), g.select_queries,
                       g.depth, g.series_terms, row.report.status);
  }
  return out;
}

namespace {

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace

Json SweepResult::summary() const {
  std::vector<double> x, n_grid;
  std::map<std::string, std::vector<double>> cols;
  for (const auto& row : rows) {
    if (row.report.status == "error") continue;
    const GateSummary& g = row.report.gates;
    x.push_back(row.value);
    n_grid.push_back(std::ldexp(1.0, static_cast<int>(row.value)));
    cols["gate_total"].push_back(static_cast<double>(g.total));
    cols["select_queries"].push_back(static_cast<double>(g.select_queries));
    cols["depth"].push_back(static_cast<double>(g.depth));
    cols["series_terms"].push_back(g.series_terms);
  }
  Json j;
  j["axis"] = axis;
  j["points"] = x.size();
  std::size_t failed = 0;
  for (const auto& row : rows) failed += row.report.status != "ok";
  j["failed_rows"] = failed;
  for (const auto& [name, y] : cols) {
    j["slopes_vs_value"][name] = optional_json(loglog_slope(x, y));
    if (axis == "n") j["slopes_vs_N"][name] = optional_json(loglog_slope(n_grid, y));
  }
  return j;
}

std::string coeffs_csv(const ExperimentConfig& c) {
  std::vector<FourierSeries> series;
  if (c.pde == "advection" && c.method != "smooth") {
    AdvectionProblem p{c.grid, c.r, c.t, c.epsilon};
    series = (c.method == "dft" ? build_advection_dft(p) : build_advection_ja(p)).series;
  } else if (c.pde == "heat" && (c.method == "dft" || c.method == "gaussian_jacobi_anger")) {
    HeatProblem p{c.grid, c.u, c.t, c.epsilon, c.kmax};
    series = (c.method == "dft" ? build_heat_dft(p) : build_heat_gaussian_ja(p)).series;
  } else if (c.pde == "heat" && c.method == "smooth_gaussian") {
    HeatProblem p{c.grid, c.u, c.t, c.epsilon, c.kmax};
    series = build_heat_smooth_gaussian(p).evolution.series;
  } else if (c.pde == "wave" && c.method != "smooth") {
    series = (c.method == "dft_1d" ? build_wave_1d_dft(c.grid.n, c.v * c.t)
                                   : build_wave_1d_ja(c.grid.n, c.v * c.t, c.epsilon))
                 .series;
  } else if (c.pde == "poisson" && c.method == "dft_1d") {
    series = build_poisson_1d_dft(PoissonProblem{c.grid, c.epsilon, c.kmax}).series;
  } else if (c.pde == "poisson" && c.method == "fourier_inverse") {
    series = build_poisson_ddim(PoissonProblem{c.grid, c.epsilon, c.kmax}).inner;
  } else {
    throw ConfigError(fmt::format("{} {} is not defined by a Fourier series", c.pde, c.method));
  }
  std::string out = "axis,zeta,re,im\n";
  for (std::size_t a = 0; a < series.size(); ++a) {
    const FourierSeries& s = series[a];
    for (int z = s.min_index; z <= s.max_index(); ++z) {
      const cplx v = s.coeff(z);
      out += fmt::format("{},{},{:.17g},{:.17g}\n", a, z, v.real(), v.imag());
    }
  }
  return out;
}

std::string census_csv(int d, int n) { return wave_gate_census(d, n).csv(); }

Json census_json(int d, int n) {
  const WaveCensus w = wave_gate_census(d, n);
  Json rows = Json::array();
  for (const auto& row : w.rows) {
    rows.push_back({{"gate", row.gate},
                    {"count", row.count},
                    {"controls", row.controls},
                    {"max_pauli_weight", row.max_pauli_weight},
                    {"cnots_each", row.cnots_each}});
  }
  return {{"d", w.d}, {"n", w.n}, {"table_applies", w.table_applies}, {"rows", rows}, {"total_cnots", w.total_cnots()}};
}

}  // namespace qpde::app
