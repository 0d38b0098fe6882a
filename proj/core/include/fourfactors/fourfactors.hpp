#pragma once

#include "fourfactors/decompose.hpp"
#include "fourfactors/error.hpp"
#include "fourfactors/factors.hpp"
#include "fourfactors/ingest.hpp"
#include "fourfactors/possession.hpp"
#include "fourfactors/ratings.hpp"
#include "fourfactors/sensitivity.hpp"
#include "fourfactors/sim.hpp"
