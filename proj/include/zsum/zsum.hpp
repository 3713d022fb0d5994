#pragma once

// Umbrella header for the whole library.

#include "zsum/config.hpp"
#include "zsum/count.hpp"
#include "zsum/counting.hpp"
#include "zsum/invariants.hpp"
#include "zsum/semigroup.hpp"
#include "zsum/sequence.hpp"
#include "zsum/serialize.hpp"
#include "zsum/smoothness.hpp"
#include "zsum/verify.hpp"
