#pragma once

// Umbrella header: the whole library.

#include "piquant/semiring.hpp"
#include "piquant/syntax.hpp"
#include "piquant/lts.hpp"
#include "piquant/runs.hpp"
#include "piquant/algebra.hpp"
#include "piquant/traces.hpp"
#include "piquant/equivalence.hpp"
