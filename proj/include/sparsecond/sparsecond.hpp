#pragma once

// Umbrella header: componentwise and mixed condition numbers of sparse
// matrices, exact dense linear algebra at desk scale, and the Monte Carlo
// harness that verifies the tail and expected-log bounds.

#include "sparsecond/bruteforce.hpp"
#include "sparsecond/condition.hpp"
#include "sparsecond/csv.hpp"
#include "sparsecond/errors.hpp"
#include "sparsecond/experiments.hpp"
#include "sparsecond/io.hpp"
#include "sparsecond/linalg.hpp"
#include "sparsecond/matrix.hpp"
#include "sparsecond/pattern.hpp"
#include "sparsecond/refined.hpp"
#include "sparsecond/rng.hpp"
