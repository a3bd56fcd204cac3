#pragma once

#include "royale/baselines.hpp"
#include "royale/bro.hpp"
#include "royale/core.hpp"
#include "royale/harness.hpp"
#include "royale/mbro.hpp"
#include "royale/problems.hpp"
#include "royale/rng.hpp"
#include "royale/stats.hpp"
