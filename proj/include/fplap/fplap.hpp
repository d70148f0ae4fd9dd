#pragma once

// Umbrella header.

#include "fplap/barriers.hpp"
#include "fplap/core/csv.hpp"
#include "fplap/core/domain.hpp"
#include "fplap/core/field.hpp"
#include "fplap/core/nonlinearity.hpp"
#include "fplap/core/params.hpp"
#include "fplap/op/evaluator.hpp"
#include "fplap/solve/eigenpair.hpp"
#include "fplap/solve/sliding.hpp"
#include "fplap/solve/steady.hpp"
#include "fplap/verify/run.hpp"
#include "fplap/verify/suites.hpp"
