#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace vortex;
using vortex::testing::l2_distance;
using vortex::testing::sample;
using vortex::testing::single_mode_spec;

namespace {

NoiseModel silent(const SpectralGrid& g) { return NoiseModel(single_mode_spec(1, 0, 1.0, SigmaKind::zero), g); }

VectorField shear(const SpectralGrid& g, double amplitude = 1.0) {
  return sample(g, [](double, double) { return 0.0; }, [=](double x, double) { return amplitude * std::sin(x); });
}

ScalarField random_vorticity(const SpectralGrid& g, std::uint64_t seed) {
  return initial_vorticity(g, InitialSpec{seed, 4, 1.0, 3.0});
}

WienerIncrement zero_increment(const NoiseModel& m, double dt) { return {dt, std::vector<double>(m.size(), 0.0)}; }

}  // namespace

TEST(SolverConfig, Validation) {
  EXPECT_NO_THROW((SolverConfig{1e-3, 0.5, 1e6}.validate()));
  EXPECT_THROW((SolverConfig{1.0, 0.5, 1e6}.validate()), std::invalid_argument);
  EXPECT_THROW((SolverConfig{0.3, 0.5, 1e6}.validate()), std::invalid_argument);
  EXPECT_THROW((SolverConfig{-1e-3, 0.5, 1e6}.validate()), std::invalid_argument);
  EXPECT_EQ((SolverConfig{1e-3, 0.5, 1e6}.steps()), 500u);
}

TEST(VelocityStep, ZeroStaysZero) {
  const SpectralGrid g(16);
  const auto m = silent(g);
  const SolverConfig cfg{1e-3, 0.5};
  const auto s = initial_state(VectorField(g), ScalarField(g));
  EXPECT_EQ(velocity_step(s, zero_increment(m, cfg.dt), m, cfg).max_abs_coeff(), 0.0);
  EXPECT_EQ(vorticity_step(s, zero_increment(m, cfg.dt), m, cfg).max_abs_coeff(), 0.0);
}

TEST(VelocityStep, ShearDecaysExactly) {
  const SpectralGrid g(32);
  const auto m = silent(g);
  const SolverConfig cfg{1e-3, 0.5};
  const auto v0 = shear(g);
  const auto s = initial_state(v0, curl(v0));
  const auto v1 = velocity_step(s, zero_increment(m, cfg.dt), m, cfg);
  EXPECT_LE(l2_distance(v1, std::exp(-cfg.dt) * v0), 1e-12);
  const auto xi1 = vorticity_step(s, zero_increment(m, cfg.dt), m, cfg);
  EXPECT_LE(l2_distance(xi1, std::exp(-cfg.dt) * curl(v0)), 1e-12);
}

TEST(VelocityStep, NoiselessEnergyInequality) {
  const SpectralGrid g(32);
  const auto m = silent(g);
  const SolverConfig cfg{1e-3, 0.5};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto xi = random_vorticity(g, seed);
    const auto s = initial_state(biot_savart(xi), xi);
    const auto v1 = velocity_step(s, zero_increment(m, cfg.dt), m, cfg);
    const double drop = l2_norm_sq(s.v) - l2_norm_sq(v1);
    EXPECT_GE(drop * 1.1, 2.0 * cfg.dt * gradient_norm_sq(v1));
    EXPECT_LE(divergence_defect(v1), 1e-12);
  }
}

TEST(VelocityStep, BlowupGuard) {
  const SpectralGrid g(16);
  const auto m = silent(g);
  const auto v0 = shear(g);
  const auto s = initial_state(v0, curl(v0));
  EXPECT_THROW(velocity_step(s, zero_increment(m, 1e-3), m, SolverConfig{1e-3, 0.5, 1e-3}), BlowupError);
}

TEST(OuStep, DecayWithoutNoise) {
  const SpectralGrid g(16);
  const auto m = silent(g);
  const SolverConfig cfg{1e-2, 0.5};
  auto s = initial_state(VectorField(g), ScalarField(g));
  EXPECT_EQ(ou_step(s, zero_increment(m, cfg.dt), m, cfg).max_abs_coeff(), 0.0);
  s.zeta = sample(g, [](double x, double y) { return std::cos(2 * x) * std::sin(y); });
  const auto z1 = ou_step(s, zero_increment(m, cfg.dt), m, cfg);
  EXPECT_LE(l2_distance(z1, std::exp(-5.0 * cfg.dt) * s.zeta), 1e-14);
}

TEST(OuStep, SingleModeVarianceOracle) {
  const SpectralGrid g(16);
  const double c = 0.8, kappa = 2.0, t_end = 0.5;
  const NoiseModel m(single_mode_spec(1, 1, c), g);
  const SolverConfig cfg{1e-3, t_end};
  const std::size_t paths = 400;
  const auto& b = m.basis()[0];
  const auto x = map_paths(paths, [&](std::size_t p) {
    auto s = initial_state(VectorField(g), ScalarField(g));
    for (std::size_t step = 0; step < cfg.steps(); ++step)
      s.zeta = ou_step(s, sample_increment(5, p, step, 1, cfg.dt), m, cfg);
    return (s.zeta.coeffs[b.plus] / b.curl_amp).real();
  });
  std::vector<double> sq(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sq[i] = x[i] * x[i];
  const auto mom = sample_moments(sq);
  const double expected = c * c * (1.0 - std::exp(-2.0 * kappa * t_end)) / (2.0 * kappa);
  EXPECT_NEAR(mom.mean, expected, 3.0 * mom.stderr_mean);
}

TEST(BetaStep, HeatDecayAndReduction) {
  const SpectralGrid g(32);
  const auto m = silent(g);
  const SolverConfig cfg{1e-3, 0.5};
  const auto beta = random_vorticity(g, 3);
  auto s = initial_state(VectorField(g), beta);
  HeatPropagator heat(g, cfg.dt);
  auto decayed = beta;
  heat.apply(decayed);
  EXPECT_LE(l2_distance(beta_step(s, cfg), decayed), 1e-15);

  const auto xi = random_vorticity(g, 4);
  s = initial_state(biot_savart(xi), xi);
  EXPECT_LE(l2_distance(beta_step(s, cfg), vorticity_step(s, zero_increment(m, cfg.dt), m, cfg)), 1e-15);
}

TEST(Trajectory, ZeroDataStaysZero) {
  const SpectralGrid g(16);
  const auto r = run_trajectory(ScalarField(g), NoiseModel(CovarianceSpec::power_law(1, 3, 1.0, 1.0), g),
                                SolverConfig{1e-2, 0.1});
  EXPECT_EQ(r.final_state.v.max_abs_coeff(), 0.0);
  EXPECT_EQ(r.final_state.xi.max_abs_coeff(), 0.0);
  EXPECT_EQ(r.stats.sup_v_l2sq, 0.0);
  EXPECT_EQ(r.stats.status, PathStatus::completed);
}

TEST(Trajectory, SingleModeMatchesExponentialDecay) {
  const SpectralGrid g(32);
  const auto xi0 = curl(shear(g));
  TrajectoryOptions opt;
  opt.record_stride = 1;
  const SolverConfig cfg{1e-3, 0.5};
  const auto r = run_trajectory(xi0, silent(g), cfg, opt);
  double err = 0.0;
  for (const auto& s : r.recorded) err = std::max(err, l2_distance(s.v, std::exp(-s.t) * shear(g)));
  EXPECT_LE(err, 1e-10);
}

TEST(Trajectory, NoiselessEnergyAndEnstrophyMonotone) {
  const SpectralGrid g(32);
  TrajectoryOptions opt;
  opt.record_stride = 1;
  const auto r = run_trajectory(random_vorticity(g, 8), silent(g), SolverConfig{1e-3, 0.2}, opt);
  for (std::size_t i = 1; i < r.recorded.size(); ++i) {
    EXPECT_LE(l2_norm_sq(r.recorded[i].v), l2_norm_sq(r.recorded[i - 1].v) * (1.0 + 1e-6));
    EXPECT_LE(l2_norm_sq(r.recorded[i].xi), l2_norm_sq(r.recorded[i - 1].xi) * (1.0 + 1e-6));
  }
}

TEST(Trajectory, SplittingAndMeanInvariants) {
  const SpectralGrid g(32);
  TrajectoryOptions opt;
  opt.record_stride = 5;
  opt.seed = 3;
  const auto r = run_trajectory(random_vorticity(g, 9), NoiseModel(CovarianceSpec::power_law(1, 6, 1.0, 1.1), g),
                                SolverConfig{1e-3, 0.1}, opt);
  for (const auto& s : r.recorded) {
    const double scale = std::sqrt(l2_norm_sq(s.xi));
    EXPECT_LE(l2_distance(s.xi, s.zeta + s.beta), 1e-13 * scale);
    EXPECT_EQ(s.xi.coeffs[0], complex(0.0));
    EXPECT_LE(divergence_defect(s.v), 1e-12);
  }
}

TEST(Trajectory, RejectsInconsistentData) {
  const SpectralGrid g(16);
  const auto xi = random_vorticity(g, 1);
  EXPECT_THROW(run_trajectory(shear(g), xi, silent(g), SolverConfig{1e-2, 0.1}), std::invalid_argument);
  auto biased = xi;
  biased.coeffs[0] = 1.0;
  EXPECT_THROW(run_trajectory(biot_savart(xi), biased, silent(g), SolverConfig{1e-2, 0.1}), std::invalid_argument);
}

TEST(Trajectory, SameSeedBitIdentical) {
  const SpectralGrid g(16);
  const NoiseModel m(CovarianceSpec::power_law(1, 4, 1.0, 1.1), g);
  TrajectoryOptions opt;
  opt.seed = 17;
  opt.path = 2;
  const auto a = run_trajectory(random_vorticity(g, 2), m, SolverConfig{1e-3, 0.05}, opt);
  const auto b = run_trajectory(random_vorticity(g, 2), m, SolverConfig{1e-3, 0.05}, opt);
  EXPECT_EQ(a.stats.sup_v_l2sq, b.stats.sup_v_l2sq);
  EXPECT_EQ(a.stats.int_grad_beta, b.stats.int_grad_beta);
  EXPECT_EQ(a.final_state.xi.coeffs, b.final_state.xi.coeffs);
  opt.path = 3;
  const auto c = run_trajectory(random_vorticity(g, 2), m, SolverConfig{1e-3, 0.05}, opt);
  EXPECT_NE(a.final_state.xi.coeffs, c.final_state.xi.coeffs);
}

TEST(Trajectory, BlowupFlagged) {
  const SpectralGrid g(16);
  const auto r = run_trajectory(random_vorticity(g, 1), silent(g), SolverConfig{1e-2, 0.1, 1e-6});
  EXPECT_EQ(r.stats.status, PathStatus::blowup);
  EXPECT_EQ(r.stats.steps_taken, 0u);
}

TEST(Trajectory, StatsUseLeftRiemannSums) {
  const SpectralGrid g(32);
  TrajectoryOptions opt;
  opt.record_stride = 1;
  opt.q = 3.0;
  const SolverConfig cfg{1e-3, 0.02};
  const auto r = run_trajectory(random_vorticity(g, 5), NoiseModel(CovarianceSpec::power_law(1, 4, 1.0, 1.1), g),
                                cfg, opt);
  double sup_v = 0.0, int_v = 0.0, sup_xi = 0.0, sup_b = 0.0, int_b = 0.0, sup_bq = 0.0;
  for (std::size_t i = 0; i < r.recorded.size(); ++i) {
    const auto& s = r.recorded[i];
    sup_v = std::max(sup_v, l2_norm_sq(s.v));
    sup_xi = std::max(sup_xi, lq_norm(s.xi, 3.0));
    sup_b = std::max(sup_b, std::sqrt(l2_norm_sq(s.beta)));
    sup_bq = std::max(sup_bq, lq_norm(s.beta, 3.0));
    if (i + 1 < r.recorded.size()) {
      int_v += cfg.dt * gradient_norm_sq(s.v);
      int_b += cfg.dt * gradient_norm_sq(s.beta);
    }
  }
  EXPECT_DOUBLE_EQ(r.stats.sup_v_l2sq, sup_v);
  EXPECT_DOUBLE_EQ(r.stats.int_grad_v, int_v);
  EXPECT_DOUBLE_EQ(r.stats.sup_xi_lq, sup_xi);
  EXPECT_DOUBLE_EQ(r.stats.sup_beta_l2, sup_b);
  EXPECT_DOUBLE_EQ(r.stats.int_grad_beta, int_b);
  EXPECT_DOUBLE_EQ(r.stats.sup_beta_lq, sup_bq);
}

TEST(Holder, ConstantPathIsZero) {
  const SpectralGrid g(16);
  const auto f = random_vorticity(g, 1);
  const std::vector<ScalarField> path(9, f);
  EXPECT_EQ(holder_quotient(path, 0.1, 0.2, 0.0, 2.0).quotient, 0.0);
}

TEST(Holder, LinearPathGivesSqrtT) {
  const SpectralGrid g(16);
  const auto phi = random_vorticity(g, 2);
  const double h = 1.0 / 16.0;
  std::vector<ScalarField> path;
  for (int i = 0; i <= 16; ++i) path.push_back((i * h) * phi);
  const double T = 16 * h;
  const auto r = holder_quotient(path, h, 0.5, 0.0, 2.0);
  EXPECT_NEAR(r.quotient, std::sqrt(T) * std::sqrt(l2_norm_sq(phi)), 1e-12);
}

TEST(Holder, OuQuotientStableUnderStepHalving) {
  const SpectralGrid g(16);
  const NoiseModel m(single_mode_spec(1, 1, 1.0), g);
  const auto mean_quotient = [&](double dt, std::size_t stride) {
    McOptions opt{21, 32, 0, 2.0, {stride, 0.2, 0.0, 2.0}};
    const auto paths = monte_carlo(ScalarField(g), m, SolverConfig{dt, 0.5}, opt);
    std::vector<double> q;
    for (const auto& p : paths) q.push_back(p.zeta_holder.quotient);
    return sample_moments(q).mean;
  };
  const double coarse = mean_quotient(2e-3, 5), fine = mean_quotient(1e-3, 10);
  EXPECT_GT(coarse, 0.0);
  EXPECT_LE(fine / coarse, 1.5);
  EXPECT_LE(coarse / fine, 1.5);
}
