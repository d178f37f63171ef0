#ifndef VORTEX_OPERATORS_HPP
#define VORTEX_OPERATORS_HPP

#include <cmath>
#include <stdexcept>

#include "vortex/field.hpp"
#include "vortex/norms.hpp"
#include "vortex/transform.hpp"

namespace vortex {

inline constexpr complex imag_unit{0.0, 1.0};

/// Spectral derivative along axis 0 (x1) or 1 (x2).
inline ScalarField derivative(ScalarField f, int axis) {
  const auto& g = f.grid;
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2)
      f.coeffs[g.flat(m1, m2)] *=
          imag_unit * (axis == 0 ? g.derivative_wavenumber(m1) : g.derivative_wavenumber(m2));
  return f;
}

inline VectorField gradient(const ScalarField& phi) {
  return VectorField(derivative(phi, 0), derivative(phi, 1));
}

inline ScalarField divergence(const VectorField& v) {
  return derivative(v.x1, 0) + derivative(v.x2, 1);
}

/// Scalar curl  xi = -d2 v1 + d1 v2.
inline ScalarField curl(const VectorField& v) {
  require_same_grid(v.x1.grid, v.x2.grid, "curl");
  const auto& g = v.grid();
  ScalarField out(g);
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2) {
      const auto i = g.flat(m1, m2);
      out.coeffs[i] = imag_unit * (g.derivative_wavenumber(m1) * v.x2.coeffs[i] -
                                   g.derivative_wavenumber(m2) * v.x1.coeffs[i]);
    }
  return out;
}

/// Divergence-free velocity with curl equal to xi: v(k) = -i k_perp xi(k) / |k|^2,
/// k_perp = (-k2, k1), v(0) = 0. Requires mean-zero vorticity.
inline VectorField biot_savart(const ScalarField& xi) {
  const auto& g = xi.grid;
  const double scale = xi.max_abs_coeff();
  if (std::abs(xi.mean()) > 1e-10 * scale)
    throw std::domain_error("biot_savart: vorticity must have zero mean (k = 0 mode)");
  VectorField v(g);
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2) {
      const double k1 = g.derivative_wavenumber(m1), k2 = g.derivative_wavenumber(m2);
      const double k2sum = k1 * k1 + k2 * k2;
      if (k2sum == 0.0) continue;
      const auto i = g.flat(m1, m2);
      const complex w = xi.coeffs[i] / k2sum;
      v.x1.coeffs[i] = imag_unit * k2 * w;
      v.x2.coeffs[i] = -imag_unit * k1 * w;
    }
  return v;
}

/// Orthogonal projection onto divergence-free fields; the k = 0 mode is kept.
inline VectorField leray_project(VectorField u) {
  const auto& g = u.grid();
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2) {
      const double k1 = g.wavenumber(m1), k2 = g.wavenumber(m2);
      const double k2sum = k1 * k1 + k2 * k2;
      if (k2sum == 0.0) continue;
      const auto i = g.flat(m1, m2);
      const complex dot = (k1 * u.x1.coeffs[i] + k2 * u.x2.coeffs[i]) / k2sum;
      u.x1.coeffs[i] -= k1 * dot;
      u.x2.coeffs[i] -= k2 * dot;
    }
  return u;
}

struct PhysicalVector {
  PhysicalField x1;
  PhysicalField x2;
};

inline PhysicalVector to_physical(const VectorField& v) {
  return {to_physical(v.x1), to_physical(v.x2)};
}

inline VectorField to_spectral(const PhysicalVector& p) {
  return VectorField(to_spectral(p.x1), to_spectral(p.x2));
}

/// u . grad(xi) at grid points, from dealiased inputs and without truncating
/// the product. `u_phys` must be the point values of dealias(u).
inline PhysicalField transport_physical(const PhysicalVector& u_phys, const ScalarField& xi) {
  const auto dxi = dealias(xi);
  const auto d1 = to_physical(derivative(dxi, 0));
  const auto d2 = to_physical(derivative(dxi, 1));
  PhysicalField out(xi.grid);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = u_phys.x1.values[i] * d1.values[i] + u_phys.x2.values[i] * d2.values[i];
  return out;
}

inline PhysicalField transport_physical(const VectorField& u, const ScalarField& xi) {
  require_same_grid(u.grid(), xi.grid, "transport");
  return transport_physical(to_physical(dealias(u)), xi);
}

/// (u . grad) v at grid points, dealiased inputs, untruncated product.
inline PhysicalVector advection_physical(const PhysicalVector& u_phys, const VectorField& v) {
  return {transport_physical(u_phys, v.x1), transport_physical(u_phys, v.x2)};
}

inline PhysicalVector advection_physical(const VectorField& u, const VectorField& v) {
  require_same_grid(u.grid(), v.grid(), "advection");
  return advection_physical(to_physical(dealias(u)), v);
}

/// B(u, v) = (u . grad) v: spectral derivatives, physical product, dealiased
/// result. Not Leray-projected.
inline VectorField bilinear_B(const VectorField& u, const VectorField& v) {
  return dealias(to_spectral(advection_physical(u, v)));
}

inline VectorField bilinear_B(const PhysicalVector& u_phys, const VectorField& v) {
  return dealias(to_spectral(advection_physical(u_phys, v)));
}

/// F(u, xi) = u . grad(xi), evaluated like bilinear_B.
inline ScalarField bilinear_F(const VectorField& u, const ScalarField& xi) {
  return dealias(to_spectral(transport_physical(u, xi)));
}

inline ScalarField bilinear_F(const PhysicalVector& u_phys, const ScalarField& xi) {
  return dealias(to_spectral(transport_physical(u_phys, xi)));
}

/// Grid quadrature of a * b.
inline double integrate_product(const PhysicalField& a, const PhysicalField& b) {
  require_same_grid(a.grid, b.grid, "integrate_product");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * b.values[i];
  return sum * a.grid.cell_area();
}

inline double integrate_product(const PhysicalVector& a, const PhysicalVector& b) {
  return integrate_product(a.x1, b.x1) + integrate_product(a.x2, b.x2);
}

/// Duality bracket <a, b> as physical-space quadrature.
inline double bracket(const ScalarField& a, const ScalarField& b) {
  return integrate_product(to_physical(a), to_physical(b));
}

inline double bracket(const VectorField& a, const VectorField& b) {
  return integrate_product(to_physical(a), to_physical(b));
}

}  // namespace vortex

#endif  // VORTEX_OPERATORS_HPP
