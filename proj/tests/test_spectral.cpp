#include <gtest/gtest.h>

#include <numbers>
#include <sstream>

#include "test_util.hpp"

using namespace vortex;
using vortex::testing::sample;

namespace {

constexpr double pi = std::numbers::pi;

ScalarField random_field(const SpectralGrid& g, std::uint64_t seed, double decay = 2.0) {
  RandomStream rng(seed, 11);
  return random_scalar_field(g, rng, {decay, -1});
}

}  // namespace

TEST(SpectralGrid, RejectsInvalidSizes) {
  EXPECT_THROW(SpectralGrid(6), std::invalid_argument);
  EXPECT_THROW(SpectralGrid(33), std::invalid_argument);
  EXPECT_THROW(SpectralGrid(32, -1.0), std::invalid_argument);
  EXPECT_THROW(SpectralGrid(32, 1.0, 0.0), std::invalid_argument);
  EXPECT_NO_THROW(SpectralGrid(8));
}

TEST(SpectralGrid, WavevectorBookkeeping) {
  const SpectralGrid g(16, 4.0 * pi);
  EXPECT_EQ(g.signed_index(8), 8);
  EXPECT_EQ(g.signed_index(9), -7);
  EXPECT_DOUBLE_EQ(g.wavenumber(1), 0.5);
  EXPECT_EQ(g.storage_index(-3), 13);
  EXPECT_DOUBLE_EQ(g.derivative_wavenumber(8), 0.0);
}

TEST(Transform, ZeroFieldGivesZeroValues) {
  const SpectralGrid g(16);
  const auto p = to_physical(ScalarField::zero(g));
  for (double v : p.values) EXPECT_EQ(v, 0.0);
}

TEST(Transform, HalfAmplitudePairIsCosine) {
  const double L = 3.0;
  const SpectralGrid g(32, L);
  ScalarField f(g);
  f.at(1, 0) = 0.5;
  f.at(-1, 0) = 0.5;
  const auto p = to_physical(f);
  const double h = g.spacing();
  double err = 0.0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) err = std::max(err, std::abs(p(i, j) - std::cos(2 * pi * i * h / L)));
  EXPECT_LE(err, 1e-14);
}

TEST(Transform, ConstantFieldHasCoefficientAtZero) {
  const SpectralGrid g(16);
  const auto f = sample(g, [](double, double) { return 2.5; });
  EXPECT_NEAR(f.coeffs[0].real(), 2.5, 1e-15);
  EXPECT_LE(f.max_abs_coeff() - 2.5, 1e-15);
}

TEST(Transform, RoundTripOnRandomFields) {
  const SpectralGrid g(64);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_field(g, s);
    const auto back = to_spectral(to_physical(f));
    double err = 0.0;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) err = std::max(err, std::abs(back.coeffs[i] - f.coeffs[i]));
    EXPECT_LE(err, 1e-13 * f.max_abs_coeff());
    EXPECT_LE(hermitian_defect(back), 1e-13);
  }
}

TEST(Dealias, FieldInsideMaskUnchanged) {
  const SpectralGrid g(32);
  const auto f = random_field(g, 3);
  const auto d = dealias(f);
  EXPECT_EQ(d.coeffs, f.coeffs);
}

TEST(Dealias, NyquistModeRemoved) {
  const SpectralGrid g(32);
  ScalarField f(g);
  f.at(16, 0) = 1.0;
  EXPECT_EQ(dealias(f).max_abs_coeff(), 0.0);
}

TEST(Dealias, Idempotent) {
  const SpectralGrid g(32);
  const auto f = to_spectral(to_physical(random_field(g, 4)));
  auto noisy = f;
  for (std::size_t i = 0; i < noisy.coeffs.size(); ++i) noisy.coeffs[i] += 1e-3;
  const auto once = dealias(noisy);
  EXPECT_EQ(dealias(once).coeffs, once.coeffs);
  const int cutoff = static_cast<int>(2.0 / 3.0 * 16);
  EXPECT_EQ(once.at(cutoff + 1, 0), complex(0.0));
  EXPECT_NE(once.at(cutoff, 0), complex(0.0));
}

TEST(Bessel, ZeroOrderIsIdentity) {
  const SpectralGrid g(32);
  const auto f = random_field(g, 5);
  EXPECT_EQ(bessel_multiplier(f, 0.0).coeffs, f.coeffs);
}

TEST(Bessel, ConstantFieldUnchanged) {
  const SpectralGrid g(16);
  ScalarField f(g);
  f.coeffs[0] = 1.7;
  for (double s : {-3.0, 0.5, 2.0}) EXPECT_DOUBLE_EQ(bessel_multiplier(f, s).coeffs[0].real(), 1.7);
}

TEST(Bessel, SingleModeScaledByFour) {
  // L = 2 pi / sqrt(3): mode (1, 0) has |k|^2 = 3.
  const SpectralGrid g(16, 2.0 * pi / std::sqrt(3.0));
  ScalarField f(g);
  f.at(1, 0) = 0.25;
  f.at(-1, 0) = 0.25;
  const auto out = bessel_multiplier(f, 2.0);
  EXPECT_NEAR(out.at(1, 0).real(), 1.0, 1e-14);
}

TEST(Bessel, InverseOrderUndoes) {
  const SpectralGrid g(32);
  const auto f = random_field(g, 6);
  const auto back = bessel_multiplier(bessel_multiplier(f, 1.3), -1.3);
  EXPECT_LE(vortex::testing::l2_distance(back, f), 1e-12 * std::sqrt(l2_norm_sq(f)));
}

TEST(LqNorm, ConstantField) {
  const double L = 3.0;
  const SpectralGrid g(16, L);
  ScalarField f(g);
  f.coeffs[0] = -2.0;
  for (double q : {1.0, 2.0, 3.5, 4.0}) EXPECT_NEAR(lq_norm(f, q), 2.0 * std::pow(L, 2.0 / q), 1e-12);
  EXPECT_NEAR(lq_norm(f, infinity), 2.0, 1e-15);
}

TEST(LqNorm, ZeroAndInvalidExponent) {
  const SpectralGrid g(16);
  EXPECT_EQ(lq_norm(ScalarField::zero(g), 3.0), 0.0);
  EXPECT_THROW(lq_norm(ScalarField::zero(g), 0.5), std::invalid_argument);
}

TEST(LqNorm, CosineClosedForm) {
  // int_0^L int_0^L cos^2(2 pi x1 / L) = L^2 / 2.
  const double L = 5.0;
  const SpectralGrid g(32, L);
  const auto f = sample(g, [&](double x, double) { return std::cos(2 * pi * x / L); });
  EXPECT_NEAR(lq_norm(f, 2.0), L / std::sqrt(2.0), 1e-13);
}

TEST(LqNorm, HomogeneousAndVectorComponentwise) {
  const SpectralGrid g(32);
  const auto f = random_field(g, 7);
  EXPECT_NEAR(lq_norm(-3.0 * f, 3.0), 3.0 * lq_norm(f, 3.0), 1e-12 * lq_norm(f, 3.0));
  const VectorField v(f, 2.0 * f);
  const double expected = std::pow(std::pow(lq_norm(f, 4.0), 4) + std::pow(lq_norm(2.0 * f, 4.0), 4), 0.25);
  EXPECT_NEAR(lq_norm(v, 4.0), expected, 1e-12 * expected);
  EXPECT_NEAR(euclidean_lq_norm(v, 2.0), lq_norm(v, 2.0), 1e-12 * expected);
}

TEST(Sobolev, ZeroOrderIsLq) {
  const SpectralGrid g(32);
  const auto f = random_field(g, 8);
  for (double q : {2.0, 4.0}) EXPECT_DOUBLE_EQ(sobolev_norm(f, 0.0, q), lq_norm(f, q));
}

TEST(Sobolev, UnitModeOrderOne) {
  const SpectralGrid g(16);
  const auto f = sample(g, [](double x, double) { return std::cos(x); });
  EXPECT_NEAR(sobolev_norm(f, 1.0, 2.0), std::sqrt(2.0) * lq_norm(f, 2.0), 1e-12);
}

TEST(Sobolev, ParsevalAgreementAndMonotonicity) {
  const SpectralGrid g(32, 3.0);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto f = random_field(g, 100 + s, 1.0 + 0.01 * s);
    const double order = -1.0 + 0.01 * s;
    const double quad = sobolev_norm(f, order, 2.0);
    const double spec = sobolev_norm_spectral(f, order);
    ASSERT_NEAR(quad, spec, 1e-10 * spec);
    ASSERT_LE(sobolev_norm_spectral(f, order - 0.5), spec);
    ASSERT_LE(sobolev_norm_spectral(f, -1.0), std::sqrt(l2_norm_sq(f)));
  }
}

TEST(Snapshot, RoundTripAndHeader) {
  const SpectralGrid g(16, 2.5);
  const auto p = to_physical(random_field(g, 9));
  std::stringstream ss(std::ios::in | std::ios::out | std::ios::binary);
  write_snapshot(ss, p);
  const auto bytes = ss.str();
  ASSERT_EQ(bytes.size(), snapshot_header_bytes + 8 * g.size());
  EXPECT_EQ(bytes.substr(0, 4), "VSPD");
  EXPECT_EQ(static_cast<unsigned char>(bytes[6]), 16);
  const auto back = read_snapshot(ss);
  EXPECT_EQ(back.values, p.values);
  EXPECT_EQ(back.grid.length(), 2.5);
  std::stringstream bad("XXXX");
  EXPECT_THROW(read_snapshot(bad), std::runtime_error);
}

TEST(Resample, PreservesSharedModes) {
  const SpectralGrid g(32), fine(64);
  const auto f = random_field(g, 10);
  const auto up = resample(f, fine);
  EXPECT_NEAR(l2_norm_sq(up), l2_norm_sq(f), 1e-12 * l2_norm_sq(f));
  EXPECT_EQ(resample(up, g).coeffs, f.coeffs);
  EXPECT_THROW(resample(f, SpectralGrid(64, 1.0)), std::invalid_argument);
}

TEST(Rng, CounterBasedDeterminism) {
  std::vector<double> a(8), b(8), c(8);
  fill_normals(derive_key(1, 2, 3), a);
  fill_normals(derive_key(1, 2, 3), b);
  fill_normals(derive_key(1, 2, 4), c);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}
