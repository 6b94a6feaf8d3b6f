#pragma once

// Umbrella header.

#include "nrasat/bench.hpp"
#include "nrasat/engine.hpp"
#include "nrasat/explain.hpp"
#include "nrasat/families.hpp"
#include "nrasat/feasible.hpp"
#include "nrasat/formula.hpp"
#include "nrasat/interval_set.hpp"
#include "nrasat/polynomial.hpp"
#include "nrasat/rational.hpp"
#include "nrasat/real_alg.hpp"
#include "nrasat/smt2.hpp"
#include "nrasat/upoly.hpp"
#include "nrasat/var.hpp"
