#ifndef VORTEX_VORTEX_HPP
#define VORTEX_VORTEX_HPP

#include "vortex/field.hpp"
#include "vortex/transform.hpp"
#include "vortex/norms.hpp"
#include "vortex/operators.hpp"
#include "vortex/snapshot.hpp"
#include "vortex/rng.hpp"
#include "vortex/random_fields.hpp"
#include "vortex/parallel.hpp"
#include "vortex/noise.hpp"
#include "vortex/integrator.hpp"
#include "vortex/initial.hpp"
#include "vortex/estimates.hpp"
#include "vortex/identities.hpp"
#include "vortex/config.hpp"
#include "vortex/outputs.hpp"
#include "vortex/experiment.hpp"

#endif  // VORTEX_VORTEX_HPP
