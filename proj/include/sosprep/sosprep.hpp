#pragma once

// Umbrella header: monomial pruning and simplification for SOS feasibility
// problems and SOS programs, with exact rational arithmetic throughout.

#include "sosprep/basis.hpp"
#include "sosprep/gram.hpp"
#include "sosprep/newton.hpp"
#include "sosprep/polynomial.hpp"
#include "sosprep/ratlp.hpp"
#include "sosprep/rational.hpp"
#include "sosprep/sdp_io.hpp"
#include "sosprep/simplify.hpp"
#include "sosprep/zda.hpp"
