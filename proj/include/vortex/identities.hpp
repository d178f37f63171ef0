#ifndef VORTEX_IDENTITIES_HPP
#define VORTEX_IDENTITIES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "vortex/estimates.hpp"
#include "vortex/operators.hpp"
#include "vortex/random_fields.hpp"

namespace vortex {

/// Residual bookkeeping: |value| / scale, or 0 when both vanish.
inline double relative(double value, double scale) {
  if (scale == 0.0) return value == 0.0 ? 0.0 : infinity;
  return std::abs(value) / scale;
}

/// Fields for one trial: three solenoidal vectors and two scalars, |k|^{-2}
/// spectra inside the dealias mask.
struct IdentityFields {
  VectorField u, v, z;
  ScalarField xi, zeta;

  static IdentityFields draw(const SpectralGrid& g, std::uint64_t seed, std::size_t trial) {
    RandomStream rng(derive_key(seed, trial, 0x1d));
    IdentityFields f;
    f.u = random_solenoidal_field(g, rng);
    f.v = random_solenoidal_field(g, rng);
    f.z = random_solenoidal_field(g, rng);
    f.xi = random_scalar_field(g, rng);
    f.zeta = random_scalar_field(g, rng);
    return f;
  }

  IdentityFields on(const SpectralGrid& g) const {
    return {resample(u, g), resample(v, g), resample(z, g), resample(xi, g), resample(zeta, g)};
  }
};

/// ||u||_{L^2} ||a||_{H^{1,2}} ||b||_{H^{1,2}}: the scale against which a trilinear
/// bracket <(u . grad) a, b> is reported.
inline double trilinear_scale(double u_l2, double a_h1, double b_h1) { return u_l2 * a_h1 * b_h1; }

template <class Field>
double h1_norm(const Field& f) {
  return std::sqrt(l2_norm_sq(f) + gradient_norm_sq(f));
}

/// <B(u,u), |u|^2 u> with the untruncated product; the weight's H^{1,2} norm is
/// that of its grid interpolant.
inline double weighted_B_residual(const VectorField& u) {
  const auto up = to_physical(dealias(u));
  const auto adv = advection_physical(up, u);
  PhysicalVector w = up;
  for (std::size_t i = 0; i < w.x1.values.size(); ++i) {
    const double m2 = up.x1.values[i] * up.x1.values[i] + up.x2.values[i] * up.x2.values[i];
    w.x1.values[i] *= m2;
    w.x2.values[i] *= m2;
  }
  const double scale = trilinear_scale(std::sqrt(l2_norm_sq(u)), h1_norm(u), h1_norm(to_spectral(w)));
  return relative(integrate_product(adv, w), scale);
}

/// <F(u,xi), xi |xi|^2> with the untruncated product.
inline double weighted_F_residual(const VectorField& u, const ScalarField& xi) {
  const auto tr = transport_physical(u, xi);
  auto w = to_physical(dealias(xi));
  for (double& x : w.values) x = x * x * x;
  const double scale = trilinear_scale(std::sqrt(l2_norm_sq(u)), h1_norm(xi), h1_norm(to_spectral(w)));
  return relative(integrate_product(tr, w), scale);
}

struct IdentityResiduals {
  double b_energy = 0.0;
  double b_skew = 0.0;
  double f_energy = 0.0;
  double f_antisymmetry = 0.0;
  double b_weighted = 0.0;
  double f_weighted = 0.0;
  double f_bound = 0.0;
  double bs_roundtrip = 0.0;
  double bs_divergence = 0.0;
  double curl_gradient = 0.0;
};

inline IdentityResiduals identity_residuals(const IdentityFields& f) {
  IdentityResiduals r;
  const auto& [u, v, z, xi, zeta] = f;
  const double u_l2 = std::sqrt(l2_norm_sq(u));

  r.b_energy = relative(bracket(bilinear_B(u, v), v), trilinear_scale(u_l2, h1_norm(v), h1_norm(v)));
  r.b_skew = relative(bracket(bilinear_B(u, v), z) + bracket(bilinear_B(u, z), v),
                      trilinear_scale(u_l2, h1_norm(v), h1_norm(z)));
  r.f_energy = relative(bracket(bilinear_F(u, xi), xi), trilinear_scale(u_l2, h1_norm(xi), h1_norm(xi)));
  r.f_antisymmetry = relative(bracket(bilinear_F(u, xi), zeta) + bracket(bilinear_F(u, zeta), xi),
                              trilinear_scale(u_l2, h1_norm(xi), h1_norm(zeta)));

  r.b_weighted = weighted_B_residual(u);
  r.f_weighted = weighted_F_residual(u, xi);

  const double dual = sobolev_norm_spectral(bilinear_F(u, xi), -1.0);
  r.f_bound = relative(dual, lq_norm(u, 4.0) * lq_norm(xi, 4.0));

  const double xin = std::sqrt(l2_norm_sq(xi));
  const auto bs = biot_savart(xi);
  r.bs_roundtrip = relative(std::sqrt(l2_norm_sq(curl(bs) - xi)), xin);
  r.bs_divergence = divergence_defect(bs);

  const double gu = std::sqrt(gradient_norm_sq(u));
  r.curl_gradient = relative(gu - std::sqrt(l2_norm_sq(curl(u))), gu);
  return r;
}

struct IdentityTolerances {
  double exact = 1e-10;
  double weighted = 1e-6;
  double f_bound = 1.01;
  double biot_savart = 1e-12;
};

inline std::vector<IdentityResiduals> identity_trials(const SpectralGrid& g, std::size_t trials,
                                                      std::uint64_t seed) {
  return map_paths(trials, [&](std::size_t t) { return identity_residuals(IdentityFields::draw(g, seed, t)); });
}

/// Worst residual per identity over `trials` fresh random fields.
inline std::vector<CheckResult> identity_suite(const SpectralGrid& g, std::size_t trials, std::uint64_t seed,
                                               const IdentityTolerances& tol = {}) {
  if (trials < 1) throw std::invalid_argument("identity_suite: trials must be >= 1");
  const auto res = identity_trials(g, trials, seed);
  const auto worst = [&](double IdentityResiduals::*m) {
    double w = 0.0;
    for (const auto& r : res) w = std::max(w, r.*m);
    return w;
  };
  const auto check = [&](const char* name, double IdentityResiduals::*m, double bound) {
    auto c = make_check(std::string("identity.") + name, worst(m), bound, trials, seed);
    c.info["N"] = g.n();
    return c;
  };
  return {
      check("B_energy", &IdentityResiduals::b_energy, tol.exact),
      check("B_skew_symmetry", &IdentityResiduals::b_skew, tol.exact),
      check("F_energy", &IdentityResiduals::f_energy, tol.exact),
      check("F_antisymmetry", &IdentityResiduals::f_antisymmetry, tol.exact),
      check("B_weighted_q4", &IdentityResiduals::b_weighted, tol.weighted),
      check("F_weighted_q4", &IdentityResiduals::f_weighted, tol.weighted),
      check("F_dual_bound", &IdentityResiduals::f_bound, tol.f_bound),
      check("biot_savart_roundtrip", &IdentityResiduals::bs_roundtrip, tol.biot_savart),
      check("biot_savart_divergence", &IdentityResiduals::bs_divergence, tol.biot_savart),
      check("curl_gradient_equivalence", &IdentityResiduals::curl_gradient, tol.biot_savart),
  };
}

/// Weighted identities for the same fields on N and 2N: observed is the ratio of
/// worst residuals (fine / coarse), required below 1.
inline std::vector<CheckResult> identity_refinement(const SpectralGrid& g, std::size_t trials,
                                                    std::uint64_t seed) {
  const SpectralGrid fine(2 * g.n(), g.length(), g.dealias_fraction());
  const auto pairs = map_paths(trials, [&](std::size_t t) {
    const auto coarse_f = IdentityFields::draw(g, seed, t);
    const auto fine_f = coarse_f.on(fine);
    return std::array<double, 4>{weighted_B_residual(coarse_f.u), weighted_B_residual(fine_f.u),
                                 weighted_F_residual(coarse_f.u, coarse_f.xi),
                                 weighted_F_residual(fine_f.u, fine_f.xi)};
  });
  std::array<double, 4> worst{};
  for (const auto& p : pairs)
    for (std::size_t i = 0; i < 4; ++i) worst[i] = std::max(worst[i], p[i]);
  const auto make = [&](const char* name, double coarse, double fine_res) {
    auto c = make_check(std::string("identity.") + name + "_refinement",
                        coarse > 0.0 ? fine_res / coarse : (fine_res > 0.0 ? infinity : 0.0), 1.0, trials, seed);
    c.passed = c.passed && fine_res < coarse;
    c.info["residual.N=" + std::to_string(g.n())] = coarse;
    c.info["residual.N=" + std::to_string(fine.n())] = fine_res;
    return c;
  };
  return {make("B_weighted_q4", worst[0], worst[1]), make("F_weighted_q4", worst[2], worst[3])};
}

}  // namespace vortex

#endif  // VORTEX_IDENTITIES_HPP
