#ifndef VORTEX_INTEGRATOR_HPP
#define VORTEX_INTEGRATOR_HPP

// Exponential (integrating-factor) Euler-Maruyama for the coupled system
//   dv    + [A v + P B(v, v)] dt = G_n(v) dW
//   dxi   + [A xi + F(v, xi)] dt = curl G_n(v) dW
//   dzeta + A zeta dt            = curl G_n(v) dW,   zeta(0) = 0
//   dbeta/dt + A beta + F(v, zeta + beta) = 0,       beta(0) = xi(0)
// with A = -Laplacian (unit viscosity). Every term on the right is frozen at
// the start of the step, and all four equations consume the same increment.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vortex/field.hpp"
#include "vortex/noise.hpp"
#include "vortex/norms.hpp"
#include "vortex/operators.hpp"

namespace vortex {

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 0.5;
  double blowup_threshold = 1e6;

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("solver.dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end))
      throw std::invalid_argument("solver.t_end must be positive");
    if (dt > t_end) throw std::invalid_argument("solver.dt must not exceed solver.t_end");
    const double ratio = t_end / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
      throw std::invalid_argument("solver.t_end must be an integer multiple of solver.dt");
    if (!(blowup_threshold > 0.0)) throw std::invalid_argument("solver.blowup_threshold must be positive");
  }

  std::size_t steps() const { return static_cast<std::size_t>(std::llround(t_end / dt)); }
};

struct CoupledState {
  double t = 0.0;
  VectorField v;
  ScalarField xi;
  ScalarField zeta;
  ScalarField beta;
};

class BlowupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-mode heat semigroup factor exp(-|k|^2 dt).
class HeatPropagator {
 public:
  HeatPropagator(const SpectralGrid& g, double dt) : grid_(g), dt_(dt), factor_(g.size()) {
    for (int m1 = 0; m1 < g.n(); ++m1)
      for (int m2 = 0; m2 < g.n(); ++m2) factor_[g.flat(m1, m2)] = std::exp(-g.k_squared(m1, m2) * dt);
  }

  double dt() const { return dt_; }
  const SpectralGrid& grid() const { return grid_; }

  void apply(ScalarField& f) const {
    for (std::size_t i = 0; i < factor_.size(); ++i) f.coeffs[i] *= factor_[i];
  }
  void apply(VectorField& v) const {
    apply(v.x1);
    apply(v.x2);
  }

 private:
  SpectralGrid grid_;
  double dt_;
  std::vector<double> factor_;
};

/// Quantities shared by the four updates of one step.
struct StepContext {
  double sigma = 0.0;
  PhysicalVector v_phys;  ///< point values of dealias(v)

  static StepContext from(const VectorField& v, const NoiseModel& model) {
    return {model.sigma(v), to_physical(dealias(v))};
  }
};

namespace detail {

inline void guard(double norm_sq, double threshold, const char* what) {
  if (!std::isfinite(norm_sq) || norm_sq > threshold * threshold)
    throw BlowupError(std::string(what) + " exceeded the blow-up threshold");
}

inline VectorField velocity_update(const VectorField& v, const StepContext& ctx, const WienerIncrement& dw,
                                   const NoiseModel& model, const HeatPropagator& heat, double threshold) {
  auto nonlinear = leray_project(bilinear_B(ctx.v_phys, v));
  nonlinear.x1.coeffs[0] = nonlinear.x2.coeffs[0] = 0.0;
  VectorField next = v;
  next.x1 -= heat.dt() * nonlinear.x1;
  next.x2 -= heat.dt() * nonlinear.x2;
  model.add_velocity_noise(next, ctx.sigma, dw);
  heat.apply(next);
  guard(l2_norm_sq(next), threshold, "velocity L2 norm");
  return next;
}

inline ScalarField transport_update(const ScalarField& f, const ScalarField& transported,
                                    const StepContext& ctx, const HeatPropagator& heat) {
  ScalarField next = f;
  auto nonlinear = bilinear_F(ctx.v_phys, transported);
  nonlinear.coeffs[0] = 0.0;
  nonlinear *= heat.dt();
  next -= nonlinear;
  return next;
}

inline ScalarField vorticity_update(const ScalarField& xi, const StepContext& ctx, const WienerIncrement& dw,
                                    const NoiseModel& model, const HeatPropagator& heat,
                                    double threshold) {
  auto next = transport_update(xi, xi, ctx, heat);
  model.add_vorticity_noise(next, ctx.sigma, dw);
  heat.apply(next);
  guard(l2_norm_sq(next), threshold, "vorticity L2 norm");
  return next;
}

inline ScalarField ou_update(const ScalarField& zeta, const StepContext& ctx, const WienerIncrement& dw,
                             const NoiseModel& model, const HeatPropagator& heat) {
  ScalarField next = zeta;
  model.add_vorticity_noise(next, ctx.sigma, dw);
  heat.apply(next);
  return next;
}

inline ScalarField beta_update(const ScalarField& zeta, const ScalarField& beta, const StepContext& ctx,
                               const HeatPropagator& heat) {
  auto next = transport_update(beta, zeta + beta, ctx, heat);
  heat.apply(next);
  return next;
}

}  // namespace detail

/// v+ = exp(-|k|^2 dt) [v - dt P B(v, v) + G_n(v) dW]. Throws BlowupError when
/// ||v+||_{L^2} exceeds the configured threshold.
inline VectorField velocity_step(const CoupledState& s, const WienerIncrement& dw, const NoiseModel& model,
                                 const SolverConfig& cfg) {
  const HeatPropagator heat(s.v.grid(), cfg.dt);
  return detail::velocity_update(s.v, StepContext::from(s.v, model), dw, model, heat, cfg.blowup_threshold);
}

/// xi+ = exp(-|k|^2 dt) [xi - dt F(v, xi) + curl G_n(v) dW].
inline ScalarField vorticity_step(const CoupledState& s, const WienerIncrement& dw, const NoiseModel& model,
                                  const SolverConfig& cfg) {
  const HeatPropagator heat(s.xi.grid, cfg.dt);
  return detail::vorticity_update(s.xi, StepContext::from(s.v, model), dw, model, heat,
                                  cfg.blowup_threshold);
}

/// zeta+ = exp(-|k|^2 dt) [zeta + curl G_n(v) dW].
inline ScalarField ou_step(const CoupledState& s, const WienerIncrement& dw, const NoiseModel& model,
                           const SolverConfig& cfg) {
  const HeatPropagator heat(s.zeta.grid, cfg.dt);
  StepContext ctx;
  ctx.sigma = model.sigma(s.v);
  return detail::ou_update(s.zeta, ctx, dw, model, heat);
}

/// beta+ = exp(-|k|^2 dt) [beta - dt F(v, zeta + beta)].
inline ScalarField beta_step(const CoupledState& s, const SolverConfig& cfg) {
  const HeatPropagator heat(s.beta.grid, cfg.dt);
  StepContext ctx;
  ctx.v_phys = to_physical(dealias(s.v));
  return detail::beta_update(s.zeta, s.beta, ctx, heat);
}

/// Advances all four fields by one step with a single shared increment.
inline void advance(CoupledState& s, const WienerIncrement& dw, const NoiseModel& model,
                    const HeatPropagator& heat, double blowup_threshold) {
  const auto ctx = StepContext::from(s.v, model);
  auto v = detail::velocity_update(s.v, ctx, dw, model, heat, blowup_threshold);
  auto xi = detail::vorticity_update(s.xi, ctx, dw, model, heat, blowup_threshold);
  auto zeta = detail::ou_update(s.zeta, ctx, dw, model, heat);
  auto beta = detail::beta_update(s.zeta, s.beta, ctx, heat);
  s.v = std::move(v);
  s.xi = std::move(xi);
  s.zeta = std::move(zeta);
  s.beta = std::move(beta);
  s.t += heat.dt();
}

inline CoupledState initial_state(VectorField v0, ScalarField xi0) {
  CoupledState s;
  s.beta = xi0;
  s.zeta = ScalarField(xi0.grid);
  s.xi = std::move(xi0);
  s.v = std::move(v0);
  return s;
}

// ---------------------------------------------------------------------------
// Trajectory statistics

enum class PathStatus { completed, blowup };

inline std::string to_string(PathStatus s) { return s == PathStatus::completed ? "completed" : "blowup"; }

/// sup over sampled pairs of ||u(t) - u(r)||_{W^{s,q}} / |t - r|^beta.
struct HolderReport {
  double space_order = 0.0;
  double exponent = 0.0;
  double q = 2.0;
  double quotient = 0.0;
};

/// W^{s,q} norm of a difference; q = 2 uses the exact spectral sum.
inline double holder_space_norm(const ScalarField& f, double s, double q) {
  if (q == 2.0) return sobolev_norm_spectral(f, s);
  return sobolev_norm(f, s, q);
}

/// Quotient over all pairs (i, i + 2^m) of samples spaced by `spacing`.
inline HolderReport holder_quotient(const std::vector<ScalarField>& samples, double spacing, double beta,
                                    double s, double q) {
  HolderReport r{s, beta, q, 0.0};
  if (!(spacing > 0.0)) throw std::invalid_argument("holder_quotient: spacing must be positive");
  for (std::size_t lag = 1; lag < samples.size(); lag *= 2) {
    const double denom = std::pow(static_cast<double>(lag) * spacing, beta);
    for (std::size_t i = 0; i + lag < samples.size(); ++i)
      r.quotient = std::max(r.quotient, holder_space_norm(samples[i + lag] - samples[i], s, q) / denom);
  }
  return r;
}

struct TrajectoryStats {
  double sup_v_l2sq = 0.0;     ///< sup_t ||v||^2_{L^2}
  double int_grad_v = 0.0;     ///< int_0^T ||grad v||^2_{L^2} dt
  double sup_xi_lq = 0.0;      ///< sup_t ||xi||_{L^q}
  double sup_beta_l2 = 0.0;    ///< sup_t ||beta||_{L^2}
  double int_grad_beta = 0.0;  ///< int_0^T ||grad beta||^2_{L^2} dt
  double sup_beta_lq = 0.0;    ///< sup_t ||beta||_{L^q}
  HolderReport zeta_holder;
  PathStatus status = PathStatus::completed;
  std::size_t steps_taken = 0;
};

struct HolderOptions {
  std::size_t stride = 10;  ///< steps between stored zeta samples; 0 disables
  double exponent = 0.2;
  double space_order = 0.0;
  double q = 2.0;
};

struct TrajectoryOptions {
  std::uint64_t seed = 0;
  std::uint64_t path = 0;
  double q = 4.0;
  HolderOptions holder;
  /// Keep every `record_stride`-th state (0: none). The final state is
  /// always included when recording.
  std::size_t record_stride = 0;
  /// Called with (step index, state) every `snapshot_stride` steps.
  std::size_t snapshot_stride = 0;
  std::function<void(std::size_t, const CoupledState&)> on_snapshot;
};

struct TrajectoryResult {
  TrajectoryStats stats;
  CoupledState final_state;
  std::vector<CoupledState> recorded;
};

/// Accumulates the path functionals from a sequence of states.
class StatsAccumulator {
 public:
  StatsAccumulator(double dt, double q) : dt_(dt), q_(q) {}

  /// Observe the state at time index i; `interior` is false for the final time.
  void observe(const CoupledState& s, bool interior) {
    stats_.sup_v_l2sq = std::max(stats_.sup_v_l2sq, l2_norm_sq(s.v));
    stats_.sup_xi_lq = std::max(stats_.sup_xi_lq, lq_norm(s.xi, q_));
    stats_.sup_beta_l2 = std::max(stats_.sup_beta_l2, std::sqrt(l2_norm_sq(s.beta)));
    stats_.sup_beta_lq = std::max(stats_.sup_beta_lq, lq_norm(s.beta, q_));
    if (interior) {
      stats_.int_grad_v += gradient_norm_sq(s.v) * dt_;
      stats_.int_grad_beta += gradient_norm_sq(s.beta) * dt_;
    }
  }

  TrajectoryStats& stats() { return stats_; }

 private:
  double dt_;
  double q_;
  TrajectoryStats stats_;
};

/// Integrates the coupled system from (v0, xi0) to cfg.t_end with increments
/// drawn from (opt.seed, opt.path, step). Stops early with status blowup when
/// the guard trips.
inline TrajectoryResult run_trajectory(const VectorField& v0, const ScalarField& xi0, const NoiseModel& model,
                                       const SolverConfig& cfg, const TrajectoryOptions& opt = {}) {
  cfg.validate();
  require_same_grid(v0.grid(), xi0.grid, "run_trajectory");
  require_same_grid(model.grid(), xi0.grid, "run_trajectory");
  const double xi_scale = std::sqrt(l2_norm_sq(xi0));
  if (std::abs(xi0.mean()) > 1e-10 * std::max(xi0.max_abs_coeff(), 1e-300))
    throw std::invalid_argument("run_trajectory: initial vorticity must have zero mean");
  if (std::sqrt(l2_norm_sq(curl(v0) - xi0)) > 1e-10 * std::max(xi_scale, 1e-300))
    throw std::invalid_argument("run_trajectory: curl(v0) does not match xi0");

  const HeatPropagator heat(xi0.grid, cfg.dt);
  const std::size_t n = cfg.steps();
  TrajectoryResult result;
  auto state = initial_state(v0, xi0);
  StatsAccumulator acc(cfg.dt, opt.q);
  std::vector<ScalarField> zeta_samples;
  const auto& h = opt.holder;

  for (std::size_t step = 0;; ++step) {
    acc.observe(state, step < n);
    if (h.stride > 0 && step % h.stride == 0) zeta_samples.push_back(state.zeta);
    if (opt.record_stride > 0 && (step % opt.record_stride == 0 || step == n))
      result.recorded.push_back(state);
    if (opt.snapshot_stride > 0 && opt.on_snapshot && step % opt.snapshot_stride == 0)
      opt.on_snapshot(step, state);
    if (step == n) break;
    const auto dw = sample_increment(opt.seed, opt.path, step, model.size(), cfg.dt);
    try {
      advance(state, dw, model, heat, cfg.blowup_threshold);
    } catch (const BlowupError&) {
      acc.stats().status = PathStatus::blowup;
      acc.stats().steps_taken = step;
      break;
    }
    state.t = static_cast<double>(step + 1) * cfg.dt;
    acc.stats().steps_taken = step + 1;
  }
  if (h.stride > 0 && zeta_samples.size() >= 2)
    acc.stats().zeta_holder =
        holder_quotient(zeta_samples, static_cast<double>(h.stride) * cfg.dt, h.exponent, h.space_order, h.q);
  else
    acc.stats().zeta_holder = {h.space_order, h.exponent, h.q, 0.0};
  result.stats = acc.stats();
  result.final_state = std::move(state);
  return result;
}

/// Same as above with v0 = biot_savart(xi0).
inline TrajectoryResult run_trajectory(const ScalarField& xi0, const NoiseModel& model, const SolverConfig& cfg,
                                       const TrajectoryOptions& opt = {}) {
  return run_trajectory(biot_savart(xi0), xi0, model, cfg, opt);
}

}  // namespace vortex

#endif  // VORTEX_INTEGRATOR_HPP
