#ifndef VORTEX_RANDOM_FIELDS_HPP
#define VORTEX_RANDOM_FIELDS_HPP

#include <cmath>

#include "vortex/field.hpp"
#include "vortex/norms.hpp"
#include "vortex/operators.hpp"
#include "vortex/rng.hpp"

namespace vortex {

struct RandomFieldOptions {
  double decay = 2.0;   ///< amplitude ~ |k|^{-decay}
  int max_index = -1;   ///< keep max(|j1|, |j2|) <= max_index; negative: dealias mask only
};

/// Mean-zero real field with random phases and |k|^{-decay} amplitudes,
/// supported inside the dealias mask and away from the Nyquist index.
inline ScalarField random_scalar_field(const SpectralGrid& g, RandomStream& rng,
                                       RandomFieldOptions opt = {}) {
  ScalarField f(g);
  const int half = g.n() / 2;
  for (int m1 = 0; m1 < g.n(); ++m1)
    for (int m2 = 0; m2 < g.n(); ++m2) {
      const int j1 = g.signed_index(m1), j2 = g.signed_index(m2);
      // one representative of each +-k pair
      if (j1 < 0 || (j1 == 0 && j2 <= 0)) continue;
      if (std::abs(j1) >= half || std::abs(j2) >= half) continue;
      if (!g.in_mask(m1, m2)) continue;
      if (opt.max_index >= 0 && std::max(std::abs(j1), std::abs(j2)) > opt.max_index) continue;
      const double amp = std::pow(std::sqrt(g.k_squared(m1, m2)), -opt.decay);
      const complex c = amp * complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
      f.coeffs[g.flat(m1, m2)] = c;
      f.coeffs[g.mirror(m1, m2)] = std::conj(c);
    }
  return f;
}

/// Mean-zero divergence-free field built by projecting two random components.
inline VectorField random_solenoidal_field(const SpectralGrid& g, RandomStream& rng,
                                           RandomFieldOptions opt = {}) {
  auto a = random_scalar_field(g, rng, opt);
  auto b = random_scalar_field(g, rng, opt);
  return leray_project(VectorField(std::move(a), std::move(b)));
}

}  // namespace vortex

#endif  // VORTEX_RANDOM_FIELDS_HPP
