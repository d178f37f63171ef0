#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace vortex;
using vortex::testing::l2_distance;
using vortex::testing::sample;

namespace {

VectorField shear(const SpectralGrid& g) {
  return sample(g, [](double, double) { return 0.0; }, [](double x, double) { return std::sin(x); });
}

RandomStream stream(std::uint64_t seed) { return RandomStream(seed, 23); }

}  // namespace

TEST(Curl, ShearFlowGivesCosine) {
  const SpectralGrid g(32);
  const auto xi = curl(shear(g));
  const auto expected = sample(g, [](double x, double) { return std::cos(x); });
  EXPECT_LE(l2_distance(xi, expected), 1e-13);
}

TEST(Curl, ConstantAndGradientFieldsAreCurlFree) {
  const SpectralGrid g(32);
  VectorField c(g);
  c.x1.coeffs[0] = 2.0;
  c.x2.coeffs[0] = -1.0;
  EXPECT_EQ(curl(c).max_abs_coeff(), 0.0);
  auto rng = stream(1);
  const auto phi = random_scalar_field(g, rng);
  EXPECT_LE(curl(gradient(phi)).max_abs_coeff(), 1e-13);
}

TEST(BiotSavart, ZeroAndCosine) {
  const SpectralGrid g(32);
  EXPECT_EQ(biot_savart(ScalarField::zero(g)).max_abs_coeff(), 0.0);
  const auto v = biot_savart(sample(g, [](double x, double) { return std::cos(x); }));
  EXPECT_LE(l2_distance(v, shear(g)), 1e-12);
}

TEST(BiotSavart, RoundTripAndDivergence) {
  const SpectralGrid g(64);
  auto rng = stream(2);
  for (int t = 0; t < 20; ++t) {
    const auto xi = random_scalar_field(g, rng);
    const auto v = biot_savart(xi);
    EXPECT_LE(l2_distance(curl(v), xi), 1e-12 * std::sqrt(l2_norm_sq(xi)));
    EXPECT_LE(divergence_defect(v), 1e-12);
  }
}

TEST(BiotSavart, RejectsNonzeroMean) {
  const SpectralGrid g(16);
  ScalarField xi(g);
  xi.coeffs[0] = 1.0;
  EXPECT_THROW(biot_savart(xi), std::domain_error);
}

TEST(Leray, DivergenceFreeUnchangedGradientRemoved) {
  const SpectralGrid g(32);
  auto rng = stream(3);
  const auto u = random_solenoidal_field(g, rng);
  EXPECT_LE(l2_distance(leray_project(u), u), 1e-13 * std::sqrt(l2_norm_sq(u)));
  const auto phi = random_scalar_field(g, rng);
  EXPECT_LE(std::sqrt(l2_norm_sq(leray_project(gradient(phi)))), 1e-13 * std::sqrt(l2_norm_sq(gradient(phi))));
  const VectorField w(random_scalar_field(g, rng), random_scalar_field(g, rng));
  const auto p = leray_project(w);
  EXPECT_LE(l2_distance(leray_project(p), p), 1e-14 * std::sqrt(l2_norm_sq(p)));
  EXPECT_LE(divergence_defect(p), 1e-13);
}

TEST(BilinearB, ZeroAndShearSelfAdvection) {
  const SpectralGrid g(32);
  EXPECT_EQ(bilinear_B(VectorField(g), VectorField(g)).max_abs_coeff(), 0.0);
  EXPECT_LE(bilinear_B(shear(g), shear(g)).max_abs_coeff(), 1e-15);
}

TEST(BilinearB, SkewSymmetryOnRandomFields) {
  const SpectralGrid g(64);
  for (std::size_t t = 0; t < 10; ++t) {
    const auto f = IdentityFields::draw(g, 5, t);
    const double lhs = bracket(bilinear_B(f.u, f.v), f.z);
    const double rhs = -bracket(bilinear_B(f.u, f.z), f.v);
    const double scale = trilinear_scale(std::sqrt(l2_norm_sq(f.u)), h1_norm(f.v), h1_norm(f.z));
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * scale);
  }
}

TEST(BilinearF, ConstantScalarGivesZero) {
  const SpectralGrid g(32);
  auto rng = stream(4);
  const auto u = random_solenoidal_field(g, rng);
  ScalarField c(g);
  c.coeffs[0] = 3.0;
  EXPECT_LE(bilinear_F(u, c).max_abs_coeff(), 1e-14);
}

TEST(BilinearF, ShearTimesCosine) {
  const SpectralGrid g(32);
  const auto xi = sample(g, [](double, double y) { return std::cos(y); });
  const auto expected = sample(g, [](double x, double y) { return -std::sin(x) * std::sin(y); });
  EXPECT_LE(l2_distance(bilinear_F(shear(g), xi), expected), 1e-13);
}

TEST(BilinearF, EnergyCancellation) {
  const SpectralGrid g(64);
  for (std::size_t t = 0; t < 10; ++t) {
    const auto f = IdentityFields::draw(g, 6, t);
    const double scale = trilinear_scale(std::sqrt(l2_norm_sq(f.u)), h1_norm(f.xi), h1_norm(f.xi));
    EXPECT_LE(std::abs(bracket(bilinear_F(f.u, f.xi), f.xi)), 1e-10 * scale);
  }
}

TEST(Norms, CurlGradientEquivalence) {
  const SpectralGrid g(64);
  auto rng = stream(7);
  for (int t = 0; t < 20; ++t) {
    const auto v = random_solenoidal_field(g, rng);
    const double a = std::sqrt(gradient_norm_sq(v)), b = std::sqrt(l2_norm_sq(curl(v)));
    EXPECT_NEAR(a, b, 1e-12 * a);
  }
}

TEST(IdentitySuite, ZeroFieldsHaveZeroResiduals) {
  const SpectralGrid g(16);
  IdentityFields f{VectorField(g), VectorField(g), VectorField(g), ScalarField(g), ScalarField(g)};
  const auto r = identity_residuals(f);
  for (double x : {r.b_energy, r.b_skew, r.f_energy, r.f_antisymmetry, r.b_weighted, r.f_weighted, r.f_bound,
                   r.bs_roundtrip, r.bs_divergence, r.curl_gradient})
    EXPECT_EQ(x, 0.0);
}

TEST(IdentitySuite, SmallRunPassesAndRefines) {
  const SpectralGrid g(64);
  const auto checks = identity_suite(g, 8, 11);
  ASSERT_EQ(checks.size(), 10u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << " observed " << c.observed;
  for (const auto& c : identity_refinement(g, 4, 11)) EXPECT_TRUE(c.passed) << c.name;
  EXPECT_THROW(identity_suite(g, 0, 1), std::invalid_argument);
}
