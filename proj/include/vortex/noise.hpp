#ifndef VORTEX_NOISE_HPP
#define VORTEX_NOISE_HPP

// Multiplicative noise G(v) h_k = c_k sigma(v) e_k with {e_k} the
// H^{1-g,2}-normalized divergence-free Fourier modes, its curl, and the
// Hille-Yosida regularization R_n = n (n I + A)^{-1}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "vortex/field.hpp"
#include "vortex/norms.hpp"
#include "vortex/operators.hpp"
#include "vortex/rng.hpp"

namespace vortex {

enum class Parity { cos, sin };
enum class SigmaKind { constant_one, rational_square, zero };

inline std::string to_string(Parity p) { return p == Parity::cos ? "cos" : "sin"; }
inline std::string to_string(SigmaKind s) {
  switch (s) {
    case SigmaKind::constant_one: return "constant_one";
    case SigmaKind::rational_square: return "rational_square";
    case SigmaKind::zero: return "zero";
  }
  return "?";
}

/// Real divergence-free mode (k_perp / |k|) phi(k.x), phi = cos or sin.
/// For k = 0 the parity selects the constant direction: cos -> x1, sin -> x2.
struct NoiseMode {
  int j1 = 0;
  int j2 = 0;
  Parity parity = Parity::cos;

  double index_magnitude() const { return std::hypot(j1, j2); }
  friend bool operator==(const NoiseMode&, const NoiseMode&) = default;
};

/// Hille-Yosida level: a positive integer n, or infinity (no regularization).
class HyLevel {
 public:
  static HyLevel infinite() { return HyLevel(); }
  static HyLevel finite(long n) {
    if (n <= 0) throw std::invalid_argument("Hille-Yosida level must be a positive integer");
    HyLevel h;
    h.n_ = n;
    return h;
  }

  bool is_infinite() const { return !n_.has_value(); }
  long value() const { return n_.value(); }

  /// n / (n + |k|^2), or 1 at infinity.
  double multiplier(double k2) const {
    if (!n_) return 1.0;
    const double n = static_cast<double>(*n_);
    return n / (n + k2);
  }

  std::string to_string() const { return n_ ? std::to_string(*n_) : "inf"; }
  friend bool operator==(const HyLevel&, const HyLevel&) = default;

 private:
  HyLevel() = default;
  std::optional<long> n_;
};

struct PivotSpec {
  NoiseMode mode{1, 0, Parity::cos};
  double amplitude = 1.0;
  friend bool operator==(const PivotSpec&, const PivotSpec&) = default;
};

/// Grid-independent description of the covariance operator G.
struct CovarianceSpec {
  std::vector<NoiseMode> modes;
  std::vector<double> coefficients;
  double roughness = 0.5;
  SigmaKind sigma_kind = SigmaKind::rational_square;
  PivotSpec pivot;
  HyLevel level = HyLevel::infinite();

  /// sum_k c_k^2: the Hilbert-Schmidt constant of G into H^{1-g,2} for sigma = 1.
  double coefficient_sum_sq() const {
    double s = 0.0;
    for (double c : coefficients) s += c * c;
    return s;
  }

  void validate() const {
    if (!(roughness > 0.0 && roughness < 1.0))
      throw std::invalid_argument("noise.roughness must lie in (0, 1)");
    if (modes.size() != coefficients.size())
      throw std::invalid_argument("noise: one coefficient per mode required");
    for (double c : coefficients)
      if (!std::isfinite(c)) throw std::invalid_argument("noise: coefficients must be finite");
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& m : modes) {
      // (j, parity) and (-j, parity) span the same line.
      int a = m.j1, b = m.j2;
      if (a < 0 || (a == 0 && b < 0)) a = -a, b = -b;
      if (!seen.insert({a, b, static_cast<int>(m.parity)}).second)
        throw std::invalid_argument("noise: duplicate mode (" + std::to_string(m.j1) + ", " +
                                    std::to_string(m.j2) + ", " + to_string(m.parity) + ")");
    }
    if (!std::isfinite(pivot.amplitude)) throw std::invalid_argument("noise.pivot.amplitude must be finite");
  }

  /// All wavevectors with kmin <= |j| <= kmax in the half plane, both parities,
  /// with c_k = c0 |j|^{-decay}.
  static CovarianceSpec power_law(double kmin, double kmax, double c0, double decay) {
    CovarianceSpec spec;
    const int r = static_cast<int>(std::ceil(kmax));
    for (int j1 = 0; j1 <= r; ++j1)
      for (int j2 = -r; j2 <= r; ++j2) {
        if (j1 == 0 && j2 <= 0) continue;
        const double mag = std::hypot(j1, j2);
        if (mag < kmin || mag > kmax) continue;
        for (Parity p : {Parity::cos, Parity::sin}) {
          spec.modes.push_back({j1, j2, p});
          spec.coefficients.push_back(c0 * std::pow(mag, -decay));
        }
      }
    return spec;
  }
};

/// One basis element e_k on a grid, stored by its amplitude at +k (the -k
/// amplitude is the conjugate).
struct BasisElement {
  NoiseMode mode;
  std::size_t plus = 0;
  std::size_t minus = 0;
  double k2 = 0.0;
  complex amp1;      ///< e_k, first component, H^{1-g,2}-normalized
  complex amp2;      ///< e_k, second component
  complex curl_amp;  ///< curl e_k
};

namespace detail {

// Raw L^2-normalized mode amplitudes (a1, a2) at +k, and whether +k is k = 0.
inline std::pair<complex, complex> raw_mode_amplitudes(const SpectralGrid& g, const NoiseMode& m) {
  const double L = g.length();
  if (m.j1 == 0 && m.j2 == 0) {
    const double a = 1.0 / L;
    return m.parity == Parity::cos ? std::pair{complex(a), complex(0.0)}
                                   : std::pair{complex(0.0), complex(a)};
  }
  const double k1 = g.base_wavenumber() * m.j1, k2 = g.base_wavenumber() * m.j2;
  const double kn = std::hypot(k1, k2);
  const complex phase = m.parity == Parity::cos ? complex(0.5) : complex(0.0, -0.5);
  const complex a = std::sqrt(2.0) / L * phase;
  return {-a * k2 / kn, a * k1 / kn};
}

inline VectorField sparse_to_dense(const SpectralGrid& g, std::size_t plus, std::size_t minus,
                                   complex a1, complex a2) {
  VectorField v(g);
  if (plus == minus) {
    v.x1.coeffs[plus] = a1.real();
    v.x2.coeffs[plus] = a2.real();
  } else {
    v.x1.coeffs[plus] = a1;
    v.x1.coeffs[minus] = std::conj(a1);
    v.x2.coeffs[plus] = a2;
    v.x2.coeffs[minus] = std::conj(a2);
  }
  return v;
}

}  // namespace detail

/// Multiplier applied to the raw mode: (1 + |k|^2)^{-(1-g)/2}.
inline double basis_normalization(double k2, double roughness) {
  return std::pow(1.0 + k2, -0.5 * (1.0 - roughness));
}

struct WienerIncrement {
  double dt = 0.0;
  std::vector<double> gaussians;
};

/// Draws one N(0,1) number per mode, a pure function of (seed, path, step).
inline WienerIncrement sample_increment(std::uint64_t seed, std::uint64_t path, std::uint64_t step,
                                        std::size_t mode_count, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("sample_increment: dt must be positive");
  WienerIncrement w{dt, std::vector<double>(mode_count)};
  fill_normals(derive_key(seed, path, step), w.gaussians);
  return w;
}

/// Hille-Yosida approximation R_n f.
inline ScalarField hille_yosida(ScalarField f, const HyLevel& level) {
  if (level.is_infinite()) return f;
  return apply_multiplier(std::move(f), [&](double k2) { return level.multiplier(k2); });
}
inline VectorField hille_yosida(VectorField v, const HyLevel& level) {
  if (level.is_infinite()) return v;
  return apply_multiplier(std::move(v), [&](double k2) { return level.multiplier(k2); });
}

struct OperatorNorms {
  double hs = 0.0;
  double radonifying = 0.0;
};

/// A CovarianceSpec bound to a grid.
class NoiseModel {
 public:
  NoiseModel(CovarianceSpec spec, const SpectralGrid& grid) : spec_(std::move(spec)), grid_(grid) {
    spec_.validate();
    basis_.reserve(spec_.modes.size());
    for (const auto& m : spec_.modes) {
      if (!grid_.in_band(m.j1, m.j2))
        throw std::invalid_argument("noise: mode (" + std::to_string(m.j1) + ", " +
                                    std::to_string(m.j2) + ") outside the grid band");
      basis_.push_back(make_element(m));
    }
    if (!grid_.in_band(spec_.pivot.mode.j1, spec_.pivot.mode.j2))
      throw std::invalid_argument("noise: pivot mode outside the grid band");
    const auto pivot_el = make_raw(spec_.pivot.mode);
    pivot_ = detail::sparse_to_dense(grid_, pivot_el.plus, pivot_el.minus, pivot_el.amp1,
                                     pivot_el.amp2);
    pivot_ *= spec_.pivot.amplitude;
    hy_.resize(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) hy_[i] = spec_.level.multiplier(basis_[i].k2);
  }

  const CovarianceSpec& spec() const { return spec_; }
  const SpectralGrid& grid() const { return grid_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  const VectorField& pivot() const { return pivot_; }

  NoiseModel with_level(const HyLevel& level) const {
    auto s = spec_;
    s.level = level;
    return NoiseModel(std::move(s), grid_);
  }

  double hy_factor(std::size_t i) const { return hy_[i]; }

  /// e_k as a dense field (no coefficient, no regularization).
  VectorField basis_field(std::size_t i) const {
    const auto& b = basis_.at(i);
    return detail::sparse_to_dense(grid_, b.plus, b.minus, b.amp1, b.amp2);
  }

  /// curl e_k as a dense field.
  ScalarField basis_curl(std::size_t i) const {
    const auto& b = basis_.at(i);
    ScalarField f(grid_);
    if (b.plus == b.minus) return f;
    f.coeffs[b.plus] = b.curl_amp;
    f.coeffs[b.minus] = std::conj(b.curl_amp);
    return f;
  }

  /// G(v) h_k = R_n c_k sigma e_k as a dense field.
  VectorField noise_image(std::size_t i, double sigma) const {
    auto f = basis_field(i);
    f *= spec_.coefficients[i] * sigma * hy_[i];
    return f;
  }

  ScalarField curl_noise_image(std::size_t i, double sigma) const {
    auto f = basis_curl(i);
    f *= spec_.coefficients[i] * sigma * hy_[i];
    return f;
  }

  double sigma(const VectorField& v) const {
    switch (spec_.sigma_kind) {
      case SigmaKind::constant_one: return 1.0;
      case SigmaKind::zero: return 0.0;
      case SigmaKind::rational_square: {
        const double s = inner_product_spectral(v, pivot_);
        const double s2 = s * s;
        return s2 / (1.0 + s2);
      }
    }
    return 0.0;
  }

  /// target += scale * sum_k R_n c_k sigma g_k sqrt(dt) e_k.
  void add_velocity_noise(VectorField& target, double sigma, const WienerIncrement& dw,
                          double scale = 1.0) const {
    check_increment(dw);
    require_same_grid(target.grid(), grid_, "add_velocity_noise");
    const double root = std::sqrt(dw.dt) * sigma * scale;
    if (root == 0.0) return;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const auto& b = basis_[i];
      const double w = root * spec_.coefficients[i] * hy_[i] * dw.gaussians[i];
      if (b.plus == b.minus) {
        target.x1.coeffs[b.plus] += w * b.amp1.real();
        target.x2.coeffs[b.plus] += w * b.amp2.real();
      } else {
        target.x1.coeffs[b.plus] += w * b.amp1;
        target.x1.coeffs[b.minus] += w * std::conj(b.amp1);
        target.x2.coeffs[b.plus] += w * b.amp2;
        target.x2.coeffs[b.minus] += w * std::conj(b.amp2);
      }
    }
  }

  /// target += scale * curl(sum_k R_n c_k sigma g_k sqrt(dt) e_k).
  void add_vorticity_noise(ScalarField& target, double sigma, const WienerIncrement& dw,
                           double scale = 1.0) const {
    check_increment(dw);
    require_same_grid(target.grid, grid_, "add_vorticity_noise");
    const double root = std::sqrt(dw.dt) * sigma * scale;
    if (root == 0.0) return;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const auto& b = basis_[i];
      if (b.plus == b.minus) continue;
      const double w = root * spec_.coefficients[i] * hy_[i] * dw.gaussians[i];
      target.coeffs[b.plus] += w * b.curl_amp;
      target.coeffs[b.minus] += w * std::conj(b.curl_amp);
    }
  }

  void check_increment(const WienerIncrement& dw) const {
    if (dw.gaussians.size() != basis_.size())
      throw std::invalid_argument("noise increment has " + std::to_string(dw.gaussians.size()) +
                                  " entries, covariance has " + std::to_string(basis_.size()) +
                                  " modes");
  }

 private:
  BasisElement make_raw(const NoiseMode& m) const {
    BasisElement b;
    b.mode = m;
    const int m1 = grid_.storage_index(m.j1), m2 = grid_.storage_index(m.j2);
    b.plus = grid_.flat(m1, m2);
    b.minus = grid_.mirror(m1, m2);
    b.k2 = grid_.k_squared(m1, m2);
    std::tie(b.amp1, b.amp2) = detail::raw_mode_amplitudes(grid_, m);
    return b;
  }

  BasisElement make_element(const NoiseMode& m) const {
    auto b = make_raw(m);
    const double norm = basis_normalization(b.k2, spec_.roughness);
    b.amp1 *= norm;
    b.amp2 *= norm;
    const int m1 = grid_.storage_index(m.j1), m2 = grid_.storage_index(m.j2);
    b.curl_amp = imag_unit * (grid_.derivative_wavenumber(m1) * b.amp2 -
                              grid_.derivative_wavenumber(m2) * b.amp1);
    return b;
  }

  CovarianceSpec spec_;
  SpectralGrid grid_;
  std::vector<BasisElement> basis_;
  std::vector<double> hy_;
  VectorField pivot_;
};

/// The basis {e_k} as dense fields.
inline std::vector<VectorField> build_noise_basis(const CovarianceSpec& spec, const SpectralGrid& grid) {
  NoiseModel model(spec, grid);
  std::vector<VectorField> out;
  out.reserve(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) out.push_back(model.basis_field(i));
  return out;
}

inline double sigma_eval(const VectorField& v, const NoiseModel& model) { return model.sigma(v); }

/// R_n [ sum_k c_k sigma(v) g_k sqrt(dt) e_k ].
inline VectorField apply_velocity_noise(const VectorField& v, const WienerIncrement& dw,
                                        const NoiseModel& model) {
  VectorField out(model.grid());
  model.add_velocity_noise(out, model.sigma(v), dw);
  return out;
}

/// curl of apply_velocity_noise.
inline ScalarField apply_vorticity_noise(const VectorField& v, const WienerIncrement& dw,
                                         const NoiseModel& model) {
  ScalarField out(model.grid());
  model.add_vorticity_noise(out, model.sigma(v), dw);
  return out;
}

namespace detail {

template <class ImageFn>
OperatorNorms operator_norms_impl(const NoiseModel& model, double s, double q, ImageFn&& image) {
  if (!(q >= 1.0) || std::isinf(q))
    throw std::invalid_argument("operator_norms: q must be finite and >= 1");
  const auto& g = model.grid();
  std::vector<double> square(g.size(), 0.0);
  double hs_sq = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    image(i, [&](const ScalarField& component) {
      hs_sq += sobolev_norm_sq_spectral(component, s);
      const auto p = to_physical(bessel_multiplier(component, s));
      for (std::size_t j = 0; j < square.size(); ++j) square[j] += p.values[j] * p.values[j];
    });
  }
  PhysicalField sf(g);
  for (std::size_t j = 0; j < square.size(); ++j) sf.values[j] = std::sqrt(square[j]);
  return {std::sqrt(hs_sq), lq_norm(sf, q)};
}

}  // namespace detail

/// Hilbert-Schmidt norm of G(v) into H^{s,2} and the square-function norm
/// || (sum_k |J^s G(v) h_k|^2)^{1/2} ||_{L^q}.
inline OperatorNorms operator_norms(const VectorField& v, const NoiseModel& model, double s, double q) {
  const double sigma = model.sigma(v);
  return detail::operator_norms_impl(model, s, q, [&](std::size_t i, auto&& visit) {
    const auto f = model.noise_image(i, sigma);
    visit(f.x1);
    visit(f.x2);
  });
}

/// Same norms for the curl noise G~(v) h_k = curl(G(v) h_k).
inline OperatorNorms vorticity_operator_norms(const VectorField& v, const NoiseModel& model, double s,
                                              double q) {
  const double sigma = model.sigma(v);
  return detail::operator_norms_impl(model, s, q, [&](std::size_t i, auto&& visit) {
    visit(model.curl_noise_image(i, sigma));
  });
}

/// Lipschitz constant of sigma in L^2: 3 sqrt(3) / 8 * ||h|| for the rational
/// square (max of 2s / (1 + s^2)^2), zero otherwise.
inline double sigma_lipschitz_bound(const NoiseModel& model) {
  if (model.spec().sigma_kind != SigmaKind::rational_square) return 0.0;
  return 3.0 * std::sqrt(3.0) / 8.0 * std::sqrt(l2_norm_sq(model.pivot()));
}

/// (sum_k c_k^2 ||R_n e_k||^2_{L^2})^{1/2}: converts a Lipschitz constant of
/// sigma into one of G in L_HS(H; L^2).
inline double noise_l2_hs_scale(const NoiseModel& model) {
  double s = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const auto& b = model.basis()[i];
    const double c = model.spec().coefficients[i] * model.hy_factor(i);
    const double e2 = std::pow(basis_normalization(b.k2, model.spec().roughness), 2);
    s += c * c * e2;
  }
  return std::sqrt(s);
}

}  // namespace vortex

#endif  // VORTEX_NOISE_HPP
