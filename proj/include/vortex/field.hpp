#ifndef VORTEX_FIELD_HPP
#define VORTEX_FIELD_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortex {

using complex = std::complex<double>;

/// Periodic N x N discretization of the torus [0, L)^2.
///
/// Fourier coefficients are stored in FFT order: storage index m in [0, N)
/// maps to the signed wavenumber index j = m for m <= N/2 and j = m - N
/// otherwise, so j ranges over {-N/2+1, ..., N/2}. Coefficient (m1, m2)
/// sits at m1 * N + m2, with m1 the x1 direction.
class SpectralGrid {
 public:
  SpectralGrid() = default;

  SpectralGrid(int modes_per_dim, double domain_length = 2.0 * std::numbers::pi,
               double dealias_fraction = 2.0 / 3.0)
      : n_(modes_per_dim), length_(domain_length), dealias_(dealias_fraction) {
    if (n_ < 8 || n_ % 2 != 0)
      throw std::invalid_argument("grid.modes_per_dim must be an even integer >= 8, got " +
                                  std::to_string(n_));
    if (!(length_ > 0.0) || !std::isfinite(length_))
      throw std::invalid_argument("grid.domain_length must be positive");
    if (!(dealias_ > 0.0 && dealias_ <= 1.0))
      throw std::invalid_argument("grid.dealias_fraction must lie in (0, 1]");
    cutoff_ = dealias_ * n_ / 2.0;
  }

  int n() const { return n_; }
  double length() const { return length_; }
  double dealias_fraction() const { return dealias_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  double cell_area() const { return (length_ / n_) * (length_ / n_); }
  double area() const { return length_ * length_; }
  double spacing() const { return length_ / n_; }
  double base_wavenumber() const { return 2.0 * std::numbers::pi / length_; }

  int signed_index(int m) const { return m <= n_ / 2 ? m : m - n_; }
  int storage_index(int j) const { return j >= 0 ? j : j + n_; }

  /// Wavevector component for storage index m.
  double wavenumber(int m) const { return base_wavenumber() * signed_index(m); }

  /// Wavenumber used for first derivatives: zero on the Nyquist index, where
  /// an odd derivative of a self-conjugate mode cannot stay real.
  double derivative_wavenumber(int m) const {
    return m == n_ / 2 ? 0.0 : wavenumber(m);
  }

  double k_squared(int m1, int m2) const {
    const double a = wavenumber(m1), b = wavenumber(m2);
    return a * a + b * b;
  }

  bool in_band(int j1, int j2) const {
    return std::abs(j1) < n_ / 2 && std::abs(j2) < n_ / 2;
  }

  bool in_mask(int m1, int m2) const {
    const int a = std::abs(signed_index(m1)), b = std::abs(signed_index(m2));
    return std::max(a, b) <= cutoff_ + 1e-12;
  }

  std::size_t flat(int m1, int m2) const { return static_cast<std::size_t>(m1) * n_ + m2; }

  /// Storage position of the mirrored wavevector -k.
  std::size_t mirror(int m1, int m2) const {
    return flat((n_ - m1) % n_, (n_ - m2) % n_);
  }

  friend bool operator==(const SpectralGrid& a, const SpectralGrid& b) {
    return a.n_ == b.n_ && a.length_ == b.length_ && a.dealias_ == b.dealias_;
  }

 private:
  int n_ = 0;
  double length_ = 0.0;
  double dealias_ = 2.0 / 3.0;
  double cutoff_ = 0.0;
};

inline void require_same_grid(const SpectralGrid& a, const SpectralGrid& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

/// Real scalar field held as Fourier amplitudes: f(x) = sum_k coeff(k) exp(i k.x).
/// A constant field c has coeff(0) = c.
struct ScalarField {
  SpectralGrid grid;
  std::vector<complex> coeffs;

  ScalarField() = default;
  explicit ScalarField(const SpectralGrid& g) : grid(g), coeffs(g.size()) {}
  ScalarField(const SpectralGrid& g, std::vector<complex> c) : grid(g), coeffs(std::move(c)) {
    if (coeffs.size() != grid.size())
      throw std::invalid_argument("ScalarField: coefficient count does not match grid");
  }

  static ScalarField zero(const SpectralGrid& g) { return ScalarField(g); }

  complex& at(int j1, int j2) {
    return coeffs[grid.flat(grid.storage_index(j1), grid.storage_index(j2))];
  }
  const complex& at(int j1, int j2) const {
    return coeffs[grid.flat(grid.storage_index(j1), grid.storage_index(j2))];
  }
  complex mean() const { return coeffs.empty() ? complex{} : coeffs[0]; }

  ScalarField& operator+=(const ScalarField& o) {
    require_same_grid(grid, o.grid, "ScalarField +=");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  ScalarField& operator-=(const ScalarField& o) {
    require_same_grid(grid, o.grid, "ScalarField -=");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  ScalarField& operator*=(double a) {
    for (auto& c : coeffs) c *= a;
    return *this;
  }
  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs) m = std::max(m, std::abs(c));
    return m;
  }
};

/// Two-component real vector field (v1, v2).
struct VectorField {
  ScalarField x1;
  ScalarField x2;

  VectorField() = default;
  explicit VectorField(const SpectralGrid& g) : x1(g), x2(g) {}
  VectorField(ScalarField a, ScalarField b) : x1(std::move(a)), x2(std::move(b)) {
    require_same_grid(x1.grid, x2.grid, "VectorField");
  }
  static VectorField zero(const SpectralGrid& g) { return VectorField(g); }

  const SpectralGrid& grid() const { return x1.grid; }

  ScalarField& operator[](int i) { return i == 0 ? x1 : x2; }
  const ScalarField& operator[](int i) const { return i == 0 ? x1 : x2; }

  VectorField& operator+=(const VectorField& o) {
    x1 += o.x1;
    x2 += o.x2;
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    x1 -= o.x1;
    x2 -= o.x2;
    return *this;
  }
  VectorField& operator*=(double a) {
    x1 *= a;
    x2 *= a;
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(double s, VectorField a) { return a *= s; }

  double max_abs_coeff() const { return std::max(x1.max_abs_coeff(), x2.max_abs_coeff()); }
};

/// Point values on the N x N grid, row-major with the row index along x1:
/// value (i, j) is f(i h, j h) with h = L / N.
struct PhysicalField {
  SpectralGrid grid;
  std::vector<double> values;

  PhysicalField() = default;
  explicit PhysicalField(const SpectralGrid& g) : grid(g), values(g.size()) {}
  PhysicalField(const SpectralGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw std::invalid_argument("PhysicalField: value count does not match grid");
  }

  double& operator()(int i, int j) { return values[grid.flat(i, j)]; }
  double operator()(int i, int j) const { return values[grid.flat(i, j)]; }
};

/// Largest |coeff(-k) - conj(coeff(k))| relative to the largest coefficient.
inline double hermitian_defect(const ScalarField& f) {
  const auto& g = f.grid;
  double worst = 0.0;
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2)
      worst = std::max(worst, std::abs(f.coeffs[g.mirror(m1, m2)] -
                                       std::conj(f.coeffs[g.flat(m1, m2)])));
  const double scale = f.max_abs_coeff();
  return scale > 0.0 ? worst / scale : 0.0;
}

/// Max over k of |k . v(k)| relative to max |v(k)|.
inline double divergence_defect(const VectorField& v) {
  const auto& g = v.grid();
  double worst = 0.0;
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2) {
      const auto i = g.flat(m1, m2);
      worst = std::max(worst, std::abs(g.wavenumber(m1) * v.x1.coeffs[i] +
                                       g.wavenumber(m2) * v.x2.coeffs[i]));
    }
  const double scale = v.max_abs_coeff();
  return scale > 0.0 ? worst / scale : 0.0;
}

/// Copies the coefficients of f onto grid g by signed wavenumber index,
/// zero-padding or truncating to |j| < N/2 of the smaller grid.
inline ScalarField resample(const ScalarField& f, const SpectralGrid& g) {
  if (f.grid.length() != g.length()) throw std::invalid_argument("resample: domain lengths differ");
  ScalarField out(g);
  const int lim = std::min(f.grid.n(), g.n()) / 2;
  for (int j1 = -lim + 1; j1 < lim; ++j1)
    for (int j2 = -lim + 1; j2 < lim; ++j2) out.at(j1, j2) = f.at(j1, j2);
  return out;
}

inline VectorField resample(const VectorField& v, const SpectralGrid& g) {
  return VectorField(resample(v.x1, g), resample(v.x2, g));
}

}  // namespace vortex

#endif  // VORTEX_FIELD_HPP
