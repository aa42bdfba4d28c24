#pragma once

// Umbrella header for the whole library.

#include "pmlab/arith.hpp"
#include "pmlab/bounds.hpp"
#include "pmlab/constants.hpp"
#include "pmlab/errors.hpp"
#include "pmlab/meanvalues.hpp"
#include "pmlab/montecarlo.hpp"
#include "pmlab/parallel.hpp"
#include "pmlab/products.hpp"
#include "pmlab/runrecord.hpp"
#include "pmlab/summation.hpp"
#include "pmlab/version.hpp"
