#pragma once

// Umbrella header for the dirdist library.

#include "dirdist/angle.hpp"
#include "dirdist/checks.hpp"
#include "dirdist/distributions.hpp"
#include "dirdist/geom.hpp"
#include "dirdist/projection.hpp"
#include "dirdist/quadrature.hpp"
#include "dirdist/rng.hpp"
#include "dirdist/sampling.hpp"
#include "dirdist/spd.hpp"
#include "dirdist/unit_vector.hpp"
#include "dirdist/xform.hpp"
