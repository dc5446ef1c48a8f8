#pragma once

#include "pdq/dists.hpp"
#include "pdq/divergence.hpp"
#include "pdq/error.hpp"
#include "pdq/estimate.hpp"
#include "pdq/fit.hpp"
#include "pdq/grid_density.hpp"
#include "pdq/numeric.hpp"
#include "pdq/random.hpp"
#include "pdq/shape.hpp"
