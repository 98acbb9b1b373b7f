#pragma once

// Umbrella header pulling in the whole library.

#include "action_angle.hpp"
#include "angles.hpp"
#include "deprit.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "poisson_series.hpp"
#include "rational.hpp"
#include "rigid_core.hpp"
#include "sam_theory.hpp"
#include "series_eval.hpp"
#include "tables.hpp"
