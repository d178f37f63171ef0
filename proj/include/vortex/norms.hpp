#ifndef VORTEX_NORMS_HPP
#define VORTEX_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vortex/field.hpp"
#include "vortex/transform.hpp"

namespace vortex {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Applies a per-mode real multiplier m(|k|^2).
template <class Multiplier>
ScalarField apply_multiplier(ScalarField f, Multiplier&& mult) {
  const auto& g = f.grid;
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2) f.coeffs[g.flat(m1, m2)] *= mult(g.k_squared(m1, m2));
  return f;
}

template <class Multiplier>
VectorField apply_multiplier(VectorField v, Multiplier&& mult) {
  v.x1 = apply_multiplier(std::move(v.x1), mult);
  v.x2 = apply_multiplier(std::move(v.x2), mult);
  return v;
}

inline ScalarField dealias(ScalarField f) {
  const auto& g = f.grid;
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2)
      if (!g.in_mask(m1, m2)) f.coeffs[g.flat(m1, m2)] = 0.0;
  return f;
}

inline VectorField dealias(VectorField v) {
  return VectorField(dealias(std::move(v.x1)), dealias(std::move(v.x2)));
}

/// J^s = (I - Laplacian)^{s/2}: multiplies mode k by (1 + |k|^2)^{s/2}.
inline ScalarField bessel_multiplier(ScalarField f, double s) {
  if (s == 0.0) return f;
  return apply_multiplier(std::move(f), [s](double k2) { return std::pow(1.0 + k2, 0.5 * s); });
}

inline VectorField bessel_multiplier(VectorField v, double s) {
  return VectorField(bessel_multiplier(std::move(v.x1), s), bessel_multiplier(std::move(v.x2), s));
}

namespace detail {

inline void check_exponent(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("L^q norm requires q >= 1");
}

// Sum over grid points of |f|^q times the cell area (rectangle rule).
inline double power_integral(const PhysicalField& p, double q) {
  double sum = 0.0;
  if (q == 2.0) {
    for (double x : p.values) sum += x * x;
  } else if (q == 4.0) {
    for (double x : p.values) sum += (x * x) * (x * x);
  } else {
    for (double x : p.values) sum += std::pow(std::abs(x), q);
  }
  return sum * p.grid.cell_area();
}

inline double max_abs(const PhysicalField& p) {
  double m = 0.0;
  for (double x : p.values) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace detail

/// (integral |f|^q dx)^{1/q} by quadrature on the grid; q = infinity gives
/// the maximum over grid points.
inline double lq_norm(const PhysicalField& p, double q) {
  detail::check_exponent(q);
  if (std::isinf(q)) return detail::max_abs(p);
  return std::pow(detail::power_integral(p, q), 1.0 / q);
}

inline double lq_norm(const ScalarField& f, double q) {
  detail::check_exponent(q);
  return lq_norm(to_physical(f), q);
}

/// Componentwise norm (sum_i integral |v_i|^q)^{1/q}; for q = infinity the sum
/// of the componentwise maxima.
inline double lq_norm(const VectorField& v, double q) {
  detail::check_exponent(q);
  const auto a = to_physical(v.x1), b = to_physical(v.x2);
  if (std::isinf(q)) return detail::max_abs(a) + detail::max_abs(b);
  return std::pow(detail::power_integral(a, q) + detail::power_integral(b, q), 1.0 / q);
}

/// (integral |v(x)|^q dx)^{1/q} with |.| the pointwise Euclidean modulus.
inline double euclidean_lq_norm(const VectorField& v, double q) {
  detail::check_exponent(q);
  const auto a = to_physical(v.x1), b = to_physical(v.x2);
  PhysicalField m(a.grid);
  for (std::size_t i = 0; i < m.values.size(); ++i) m.values[i] = std::hypot(a.values[i], b.values[i]);
  return lq_norm(m, q);
}

/// ||J^s f||_{L^q}.
inline double sobolev_norm(const ScalarField& f, double s, double q) {
  return lq_norm(bessel_multiplier(f, s), q);
}
inline double sobolev_norm(const VectorField& v, double s, double q) {
  return lq_norm(bessel_multiplier(v, s), q);
}

/// Squared W^{s,2} norm via Parseval: L^2 * sum_k (1+|k|^2)^s |f(k)|^2.
inline double sobolev_norm_sq_spectral(const ScalarField& f, double s) {
  const auto& g = f.grid;
  double sum = 0.0;
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2) {
      const double w = s == 0.0 ? 1.0 : std::pow(1.0 + g.k_squared(m1, m2), s);
      sum += w * std::norm(f.coeffs[g.flat(m1, m2)]);
    }
  return sum * g.area();
}

inline double sobolev_norm_spectral(const ScalarField& f, double s) {
  return std::sqrt(sobolev_norm_sq_spectral(f, s));
}
inline double sobolev_norm_spectral(const VectorField& v, double s) {
  return std::sqrt(sobolev_norm_sq_spectral(v.x1, s) + sobolev_norm_sq_spectral(v.x2, s));
}

/// L^2 inner product via Parseval; equal to grid quadrature of f * g.
inline double inner_product_spectral(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid, "inner_product_spectral");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) sum += (a.coeffs[i] * std::conj(b.coeffs[i])).real();
  return sum * a.grid.area();
}
inline double inner_product_spectral(const VectorField& a, const VectorField& b) {
  return inner_product_spectral(a.x1, b.x1) + inner_product_spectral(a.x2, b.x2);
}

inline double l2_norm_sq(const ScalarField& f) { return sobolev_norm_sq_spectral(f, 0.0); }
inline double l2_norm_sq(const VectorField& v) { return l2_norm_sq(v.x1) + l2_norm_sq(v.x2); }

/// ||grad f||^2_{L^2} = L^2 sum_k |k|^2 |f(k)|^2.
inline double gradient_norm_sq(const ScalarField& f) {
  const auto& g = f.grid;
  double sum = 0.0;
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2)
      sum += g.k_squared(m1, m2) * std::norm(f.coeffs[g.flat(m1, m2)]);
  return sum * g.area();
}
inline double gradient_norm_sq(const VectorField& v) {
  return gradient_norm_sq(v.x1) + gradient_norm_sq(v.x2);
}

}  // namespace vortex

#endif  // VORTEX_NORMS_HPP
