#ifndef VORTEX_ESTIMATES_HPP
#define VORTEX_ESTIMATES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vortex/integrator.hpp"
#include "vortex/noise.hpp"
#include "vortex/norms.hpp"
#include "vortex/operators.hpp"
#include "vortex/parallel.hpp"
#include "vortex/random_fields.hpp"
#include "vortex/rng.hpp"

namespace vortex {

/// Verdict of one check: passed iff observed <= bound (a skipped check passes).
struct CheckResult {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  bool passed = false;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  bool skipped = false;
  std::map<std::string, double> info;
};

inline CheckResult make_check(std::string name, double observed, double bound, std::size_t n,
                              std::uint64_t seed) {
  CheckResult r;
  r.name = std::move(name);
  r.observed = observed;
  r.bound = bound;
  r.passed = observed <= bound;  // false for NaN
  r.n_samples = n;
  r.seed = seed;
  return r;
}

inline CheckResult skipped_check(std::string name, std::size_t n, std::uint64_t seed) {
  CheckResult r;
  r.name = std::move(name);
  r.passed = true;
  r.skipped = true;
  r.n_samples = n;
  r.seed = seed;
  return r;
}

inline bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

// ---------------------------------------------------------------------------
// Path functionals

inline constexpr std::array<const char*, 6> functional_names{
    "sup_v_l2sq", "int_grad_v", "sup_xi_lq", "sup_beta_l2", "int_grad_beta", "sup_beta_lq"};

inline double functional(const TrajectoryStats& s, std::size_t index) {
  switch (index) {
    case 0: return s.sup_v_l2sq;
    case 1: return s.int_grad_v;
    case 2: return s.sup_xi_lq;
    case 3: return s.sup_beta_l2;
    case 4: return s.int_grad_beta;
    case 5: return s.sup_beta_lq;
  }
  throw std::out_of_range("functional index");
}

struct SampleMoments {
  double mean = 0.0;
  double stderr_mean = 0.0;
};

inline SampleMoments sample_moments(const std::vector<double>& x) {
  SampleMoments m;
  if (x.empty()) return m;
  for (double v : x) m.mean += v;
  m.mean /= static_cast<double>(x.size());
  if (x.size() < 2) return m;
  double ss = 0.0;
  for (double v : x) ss += (v - m.mean) * (v - m.mean);
  m.stderr_mean = std::sqrt(ss / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
  return m;
}

inline SampleMoments functional_moments(const std::vector<TrajectoryStats>& paths, std::size_t index) {
  std::vector<double> x;
  x.reserve(paths.size());
  for (const auto& p : paths) x.push_back(functional(p, index));
  return sample_moments(x);
}

inline std::size_t blowup_count(const std::vector<TrajectoryStats>& paths) {
  return static_cast<std::size_t>(std::count_if(paths.begin(), paths.end(), [](const TrajectoryStats& s) {
    return s.status == PathStatus::blowup;
  }));
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct McOptions {
  std::uint64_t base_seed = 1;
  std::size_t n_paths = 32;
  std::size_t first_path = 0;
  double q = 4.0;
  HolderOptions holder;
};

/// Runs paths first_path .. first_path + n_paths - 1 in parallel; path i uses
/// the increment stream (base_seed, i).
inline std::vector<TrajectoryStats> monte_carlo(const ScalarField& xi0, const NoiseModel& model,
                                                const SolverConfig& cfg, const McOptions& opt) {
  const auto v0 = biot_savart(xi0);
  return map_paths(opt.n_paths, [&](std::size_t i) {
    TrajectoryOptions t;
    t.seed = opt.base_seed;
    t.path = opt.first_path + i;
    t.q = opt.q;
    t.holder = opt.holder;
    return run_trajectory(v0, xi0, model, cfg, t).stats;
  });
}

/// Ceilings for the six functionals, in functional_names order.
using Ceilings = std::array<double, 6>;

inline constexpr Ceilings default_ceilings{1e6, 1e6, 1e6, 1e6, 1e6, 1e6};

/// Means and standard errors of each functional, checked against finite ceilings.
inline std::vector<CheckResult> energy_report(const std::vector<TrajectoryStats>& paths,
                                              const Ceilings& ceilings = default_ceilings,
                                              std::uint64_t seed = 0) {
  if (paths.size() < 2) throw std::invalid_argument("energy_report: at least 2 paths required");
  std::vector<CheckResult> out;
  const auto blowups = blowup_count(paths);
  auto status = make_check("energy.blowup_paths", static_cast<double>(blowups), 0.0, paths.size(), seed);
  status.info["blowup_paths"] = static_cast<double>(blowups);
  out.push_back(status);
  for (std::size_t f = 0; f < functional_names.size(); ++f) {
    const auto m = functional_moments(paths, f);
    auto r = make_check(std::string("energy.") + functional_names[f], m.mean, ceilings[f], paths.size(), seed);
    r.passed = r.passed && std::isfinite(m.mean) && blowups == 0;
    r.info["stderr"] = m.stderr_mean;
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hille-Yosida levels

struct LevelRun {
  HyLevel level;
  std::vector<TrajectoryStats> paths;
};

/// Matched-seed Monte Carlo at each level.
inline std::vector<LevelRun> run_levels(const ScalarField& xi0, const NoiseModel& base,
                                        const std::vector<HyLevel>& levels, const SolverConfig& cfg,
                                        const McOptions& opt) {
  std::vector<LevelRun> out;
  for (const auto& level : levels) out.push_back({level, monte_carlo(xi0, base.with_level(level), cfg, opt)});
  return out;
}

/// max/min ratio of the mean functionals across levels; 1 when all means vanish.
inline double spread_ratio(const std::vector<double>& means) {
  const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
  if (*hi == 0.0) return 1.0;
  if (!(*lo > 0.0)) return infinity;
  return *hi / *lo;
}

inline CheckResult hy_uniformity(const std::vector<LevelRun>& runs, double factor = 1.5,
                                 std::uint64_t seed = 0) {
  if (runs.size() < 2) throw std::invalid_argument("hy_uniformity: at least 2 levels required");
  double worst = 1.0;
  std::size_t blowups = 0;
  std::map<std::string, double> info;
  for (std::size_t f = 0; f < functional_names.size(); ++f) {
    std::vector<double> means;
    for (const auto& run : runs) {
      const double m = functional_moments(run.paths, f).mean;
      means.push_back(m);
      info[std::string("mean.") + functional_names[f] + ".n=" + run.level.to_string()] = m;
    }
    const double r = spread_ratio(means);
    info[std::string("ratio.") + functional_names[f]] = r;
    worst = std::max(worst, r);
  }
  for (const auto& run : runs) blowups += blowup_count(run.paths);
  auto out = make_check("hy_uniformity", blowups ? infinity : worst, factor, runs.front().paths.size(), seed);
  out.info = std::move(info);
  out.info["blowup_paths"] = static_cast<double>(blowups);
  return out;
}

// ---------------------------------------------------------------------------
// Hoelder regularity of the Ornstein-Uhlenbeck part

struct ZetaParams {
  double beta = 0.2;
  double delta = 0.0;
  double p = 25.0;
  double q = 2.0;
  double roughness = 0.5;
  double max_variation = 2.0;

  /// beta + delta/2 + 1/p < (1 - g)/2.
  bool admissible() const { return beta + 0.5 * delta + 1.0 / p < 0.5 * (1.0 - roughness); }

  void validate() const {
    if (!(beta > 0.0 && p >= 1.0 && q >= 1.0 && delta >= 0.0))
      throw std::invalid_argument("zeta_regularity: need beta > 0, delta >= 0, p >= 1, q >= 1");
    if (!admissible())
      throw std::invalid_argument("zeta_regularity: beta + delta/2 + 1/p = " +
                                  std::to_string(beta + 0.5 * delta + 1.0 / p) + " is not below (1 - g)/2 = " +
                                  std::to_string(0.5 * (1.0 - roughness)));
  }

  HolderOptions holder(std::size_t stride = 10) const { return {stride, beta, delta, q}; }
};

inline CheckResult zeta_regularity(const std::vector<LevelRun>& runs, const ZetaParams& prm,
                                   std::uint64_t seed = 0) {
  prm.validate();
  if (runs.empty()) throw std::invalid_argument("zeta_regularity: no runs");
  std::vector<double> means;
  std::map<std::string, double> info;
  bool finite = true;
  for (const auto& run : runs) {
    std::vector<double> qs;
    double moment = 0.0;
    for (const auto& s : run.paths) {
      const auto& h = s.zeta_holder;
      if (h.exponent != prm.beta || h.space_order != prm.delta || h.q != prm.q)
        throw std::invalid_argument("zeta_regularity: runs were recorded with different Hoelder parameters");
      qs.push_back(h.quotient);
      moment += std::pow(h.quotient, prm.p);
    }
    const auto m = sample_moments(qs);
    const double pth = std::pow(moment / static_cast<double>(qs.size()), 1.0 / prm.p);
    finite = finite && std::isfinite(m.mean) && std::isfinite(pth);
    means.push_back(m.mean);
    info["mean.n=" + run.level.to_string()] = m.mean;
    info["stderr.n=" + run.level.to_string()] = m.stderr_mean;
    info["p_moment_root.n=" + run.level.to_string()] = pth;
  }
  const double ratio = finite ? spread_ratio(means) : infinity;
  auto out = make_check("zeta_regularity", ratio, prm.max_variation, runs.front().paths.size(), seed);
  out.info = std::move(info);
  return out;
}

// ---------------------------------------------------------------------------
// Gronwall weight and pathwise uniqueness

/// max over random fields of ||V||^2_{L^4} / (||V||_{L^2} ||grad V||_{L^2}), with
/// |V| the Euclidean modulus. Decay exponents vary over [0.5, 3].
inline double measure_gagliardo_nirenberg(const SpectralGrid& g, std::size_t trials, std::uint64_t seed) {
  const auto ratios = map_paths(trials, [&](std::size_t t) {
    RandomStream rng(derive_key(seed, t, 0x6e));
    RandomFieldOptions opt;
    opt.decay = 0.5 + 2.5 * rng.uniform();
    opt.max_index = 1 + static_cast<int>(rng.uniform() * (g.n() / 3));
    const auto v = random_solenoidal_field(g, rng, opt);
    const double l2 = std::sqrt(l2_norm_sq(v)), grad = std::sqrt(gradient_norm_sq(v));
    if (l2 == 0.0 || grad == 0.0) return 0.0;
    const double l4 = euclidean_lq_norm(v, 4.0);
    return l4 * l4 / (l2 * grad);
  });
  return *std::max_element(ratios.begin(), ratios.end());
}

struct LipschitzEstimate {
  double sigma_slope = 0.0;  ///< max |sigma(v1) - sigma(v2)| / ||v1 - v2||
  double sigma_bound = 0.0;  ///< analytic bound on the same slope
  double l_g = 0.0;          ///< sigma_slope * noise_l2_hs_scale
};

/// Finite-difference sweep: v1 random with <v1, h> spread over the range where
/// sigma bends, v2 a small random perturbation of v1.
inline LipschitzEstimate estimate_sigma_lipschitz(const NoiseModel& model, std::size_t trials,
                                                  std::uint64_t seed) {
  const auto& g = model.grid();
  const auto& h = model.pivot();
  const double h2 = l2_norm_sq(h);
  const auto slopes = map_paths(trials, [&](std::size_t t) {
    RandomStream rng(derive_key(seed, t, 0x11));
    auto v1 = random_solenoidal_field(g, rng, {});
    const double target = h2 > 0.0 ? (6.0 * rng.uniform() - 3.0) : 0.0;
    if (h2 > 0.0) {
      auto shift = h;
      shift *= (target - inner_product_spectral(v1, h)) / h2;
      v1 += shift;
    }
    auto d = random_solenoidal_field(g, rng, {});
    const double dn = std::sqrt(l2_norm_sq(d));
    if (dn == 0.0) return 0.0;
    d *= 1e-4 * (0.5 + rng.uniform()) / dn;
    const auto v2 = v1 + d;
    return std::abs(model.sigma(v1) - model.sigma(v2)) / std::sqrt(l2_norm_sq(d));
  });
  LipschitzEstimate e;
  e.sigma_slope = *std::max_element(slopes.begin(), slopes.end());
  e.sigma_bound = sigma_lipschitz_bound(model);
  e.l_g = e.sigma_slope * noise_l2_hs_scale(model);
  return e;
}

struct GronwallWeight {
  double a = 0.0;    ///< coefficient of ||grad v1||^2 in psi
  double l_g = 0.0;  ///< Lipschitz constant of G into L_HS(H; L^2)
};

/// With epsilon = 1 in Young's inequality, a = C_GN^2.
inline GronwallWeight gronwall_weight(double gn_constant, double l_g) { return {gn_constant * gn_constant, l_g}; }

struct PairTrajectory {
  double sup_diff = 0.0;      ///< sup_t ||v1 - v2||_{L^2}
  double m_initial = 0.0;     ///< ||V(0)||^2
  double m_final = 0.0;       ///< exp(-int psi) ||V(T)||^2
  double max_m_growth = 0.0;  ///< max_t M(t+dt) / M(t), 0 when M vanishes
  PathStatus status = PathStatus::completed;
};

/// Integrates the velocity equation from two data under one increment stream
/// and tracks M(t) = exp(-int_0^t psi) ||v1 - v2||^2 with psi = a ||grad v1||^2 + L_g^2
/// (left-endpoint quadrature).
inline PairTrajectory coupled_pair(const VectorField& v0_a, const VectorField& v0_b, const NoiseModel& model,
                                   const SolverConfig& cfg, const GronwallWeight& w, std::uint64_t seed_a,
                                   std::uint64_t seed_b, std::uint64_t path) {
  if (seed_a != seed_b) throw std::invalid_argument("coupled_pair: the two solutions must share one noise stream");
  cfg.validate();
  const HeatPropagator heat(model.grid(), cfg.dt);
  VectorField a = v0_a, b = v0_b;
  PairTrajectory r;
  double log_weight = 0.0;
  double m_prev = l2_norm_sq(a - b);
  r.m_initial = m_prev;
  r.sup_diff = std::sqrt(m_prev);
  r.m_final = m_prev;
  for (std::size_t step = 0; step < cfg.steps(); ++step) {
    const auto dw = sample_increment(seed_a, path, step, model.size(), cfg.dt);
    const double psi = w.a * gradient_norm_sq(a) + w.l_g * w.l_g;
    try {
      auto na = detail::velocity_update(a, StepContext::from(a, model), dw, model, heat, cfg.blowup_threshold);
      auto nb = detail::velocity_update(b, StepContext::from(b, model), dw, model, heat, cfg.blowup_threshold);
      a = std::move(na);
      b = std::move(nb);
    } catch (const BlowupError&) {
      r.status = PathStatus::blowup;
      return r;
    }
    log_weight -= psi * cfg.dt;
    const double d2 = l2_norm_sq(a - b);
    r.sup_diff = std::max(r.sup_diff, std::sqrt(d2));
    const double m = std::exp(log_weight) * d2;
    if (m_prev > 0.0) r.max_m_growth = std::max(r.max_m_growth, m / m_prev);
    m_prev = m;
    r.m_final = m;
  }
  return r;
}

struct GronwallOptions {
  std::uint64_t base_seed = 1;
  std::size_t n_paths = 32;
  double perturbation = 1e-3;
  std::uint64_t perturbation_seed = 99;
  double identical_tolerance = 1e-12;
  double slack = 0.05;
};

/// Two checks: identical data stay identical, and the mean weighted squared
/// difference at T stays below (1 + slack) ||V(0)||^2.
inline std::vector<CheckResult> gronwall_uniqueness(const VectorField& v0, const NoiseModel& model,
                                                    const SolverConfig& cfg, const GronwallWeight& w,
                                                    const GronwallOptions& opt) {
  RandomStream rng(opt.perturbation_seed, 0x9e);
  auto dv = random_solenoidal_field(v0.grid(), rng, {});
  dv *= opt.perturbation / std::sqrt(l2_norm_sq(dv));
  const auto v0_b = v0 + dv;

  const auto same = map_paths(opt.n_paths, [&](std::size_t i) {
    return coupled_pair(v0, v0, model, cfg, w, opt.base_seed, opt.base_seed, i);
  });
  const auto pert = map_paths(opt.n_paths, [&](std::size_t i) {
    return coupled_pair(v0, v0_b, model, cfg, w, opt.base_seed, opt.base_seed, i);
  });

  double worst_same = 0.0;
  std::size_t blowups = 0;
  for (const auto& p : same) {
    worst_same = std::max(worst_same, p.sup_diff);
    blowups += p.status == PathStatus::blowup;
  }
  std::vector<double> finals;
  for (const auto& p : pert) {
    finals.push_back(p.m_final);
    blowups += p.status == PathStatus::blowup;
  }
  const auto m = sample_moments(finals);
  const double v2 = l2_norm_sq(dv);

  auto identical = make_check("gronwall.identical_data", blowups ? infinity : worst_same, opt.identical_tolerance,
                              opt.n_paths, opt.base_seed);
  auto perturbed = make_check("gronwall.perturbed_data", blowups ? infinity : m.mean, (1.0 + opt.slack) * v2,
                              opt.n_paths, opt.base_seed);
  perturbed.info["stderr"] = m.stderr_mean;
  perturbed.info["initial_sq"] = v2;
  perturbed.info["a"] = w.a;
  perturbed.info["l_g"] = w.l_g;
  return {identical, perturbed};
}

// ---------------------------------------------------------------------------
// Burkholder-Davis-Gundy constants

struct BdgOptions {
  double q = 4.0;
  std::vector<int> m_list{2, 4};
  std::size_t n_paths = 500;
  std::uint64_t seed = 1;
  double dt = 1e-3;
};

struct BdgEstimate {
  int m = 2;
  int n = 0;
  double t_end = 0.0;
  double moment = 0.0;        ///< MC mean of sup_t ||int_0^t Phi dW||^m_{L^q}
  double moment_stderr = 0.0;
  double radonifying = 0.0;   ///< ||Phi||_{R(H; L^q)}
  double constant = 0.0;      ///< moment / (T ||Phi||^2_R)^{m/2}
};

/// Frozen Phi = G(v0); the stochastic integral is sum_k Phi h_k W_k(t), sampled
/// at multiples of dt. Norms of vector fields use the Euclidean modulus.
inline std::vector<BdgEstimate> bdg_constants(const VectorField& v0, const NoiseModel& model, double t_end,
                                              const BdgOptions& opt) {
  for (int m : opt.m_list)
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("bdg: moment orders must be even and >= 2");
  const SolverConfig cfg{opt.dt, t_end, 1e6};
  cfg.validate();
  const double sigma = model.sigma(v0);
  const double radon = operator_norms(v0, model, 0.0, opt.q).radonifying;
  const std::size_t steps = cfg.steps();
  const auto sups = map_paths(opt.n_paths, [&](std::size_t path) {
    WienerIncrement w{1.0, std::vector<double>(model.size(), 0.0)};
    double sup = 0.0;
    for (std::size_t step = 0; step < steps; ++step) {
      const auto dw = sample_increment(opt.seed, path, step, model.size(), opt.dt);
      const double root = std::sqrt(opt.dt);
      for (std::size_t k = 0; k < w.gaussians.size(); ++k) w.gaussians[k] += root * dw.gaussians[k];
      VectorField x(model.grid());
      model.add_velocity_noise(x, sigma, w);
      sup = std::max(sup, euclidean_lq_norm(x, opt.q));
    }
    return sup;
  });
  std::vector<BdgEstimate> out;
  for (int m : opt.m_list) {
    std::vector<double> x;
    for (double s : sups) x.push_back(std::pow(s, m));
    const auto mo = sample_moments(x);
    BdgEstimate e;
    e.m = m;
    e.n = model.grid().n();
    e.t_end = t_end;
    e.moment = mo.mean;
    e.moment_stderr = mo.stderr_mean;
    e.radonifying = radon;
    const double scale = std::pow(t_end * radon * radon, 0.5 * m);
    e.constant = scale > 0.0 ? mo.mean / scale : std::numeric_limits<double>::quiet_NaN();
    out.push_back(e);
  }
  return out;
}

/// One check per moment order: max_i |C_i / mean(C) - 1| against the tolerance.
/// A vanishing Phi leaves the constant undefined and the check is skipped.
inline std::vector<CheckResult> bdg_report(const std::vector<BdgEstimate>& estimates, double tolerance,
                                           std::size_t n_paths, std::uint64_t seed) {
  std::map<int, std::vector<const BdgEstimate*>> by_m;
  for (const auto& e : estimates) by_m[e.m].push_back(&e);
  std::vector<CheckResult> out;
  for (const auto& [m, list] : by_m) {
    const std::string name = "bdg.m=" + std::to_string(m);
    const bool degenerate = std::any_of(list.begin(), list.end(), [](const BdgEstimate* e) {
      return !(e->radonifying > 0.0);
    });
    if (degenerate) {
      out.push_back(skipped_check(name, n_paths, seed));
      continue;
    }
    double mean = 0.0;
    for (const auto* e : list) mean += e->constant;
    mean /= static_cast<double>(list.size());
    double worst = 0.0;
    for (const auto* e : list) worst = std::max(worst, std::abs(e->constant / mean - 1.0));
    auto c = make_check(name, worst, tolerance, n_paths, seed);
    for (const auto* e : list)
      c.info["C.N=" + std::to_string(e->n) + ".T=" + std::to_string(e->t_end).substr(0, 4)] = e->constant;
    c.info["mean_constant"] = mean;
    out.push_back(c);
  }
  return out;
}

}  // namespace vortex

#endif  // VORTEX_ESTIMATES_HPP
