#ifndef VORTEX_INITIAL_HPP
#define VORTEX_INITIAL_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "vortex/field.hpp"
#include "vortex/norms.hpp"
#include "vortex/rng.hpp"

namespace vortex {

/// Random mean-zero initial vorticity with |j|^{-decay} amplitudes on
/// 1 <= max(|j1|, |j2|) <= max_index, rescaled to the requested L^2 norm.
struct InitialSpec {
  std::uint64_t seed = 20240611;
  int max_index = 8;
  double decay = 1.0;
  double l2_norm = 5.0;

  void validate() const {
    if (max_index < 1) throw std::invalid_argument("initial.max_index must be >= 1");
    if (!std::isfinite(decay)) throw std::invalid_argument("initial.decay must be finite");
    if (!(l2_norm >= 0.0) || !std::isfinite(l2_norm))
      throw std::invalid_argument("initial.l2_norm must be a finite nonnegative number");
  }

  friend bool operator==(const InitialSpec&, const InitialSpec&) = default;
};

/// The draws are indexed by signed wavenumber, so the same spec yields the same
/// field on every grid whose dealias mask contains the support.
inline ScalarField initial_vorticity(const SpectralGrid& g, const InitialSpec& spec) {
  spec.validate();
  const int K = spec.max_index;
  if (!g.in_band(K, K) || !g.in_mask(K, K))
    throw std::invalid_argument("initial.max_index " + std::to_string(K) +
                                " exceeds the dealiased band of an N = " + std::to_string(g.n()) + " grid");
  RandomStream rng(spec.seed, 0x1a17);
  ScalarField xi(g);
  for (int j1 = 0; j1 <= K; ++j1)
    for (int j2 = -K; j2 <= K; ++j2) {
      if (j1 == 0 && j2 <= 0) continue;
      const double a = rng.normal(), b = rng.normal();
      const complex c = std::pow(std::hypot(j1, j2), -spec.decay) * complex(a, b) / std::sqrt(2.0);
      xi.at(j1, j2) = c;
      xi.at(-j1, -j2) = std::conj(c);
    }
  const double norm = std::sqrt(l2_norm_sq(xi));
  if (norm > 0.0) xi *= spec.l2_norm / norm;
  return xi;
}

}  // namespace vortex

#endif  // VORTEX_INITIAL_HPP
