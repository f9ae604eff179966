#pragma once

#include <utility>
#include <vector>

#include "crloop/exactmath/ratpoly.hpp"

namespace crl {

/// Irreducible factors over Q of a square-free polynomial (Zassenhaus:
/// factor modulo a small prime, Hensel-lift, recombine). Each factor is
/// primitive with integer coefficients and positive leading coefficient.
std::vector<RatPoly> irreducible_factors(const RatPoly& squarefree);

/// Complete factorization over Q into primitive irreducible factors with
/// multiplicities. Constant content is dropped.
std::vector<std::pair<RatPoly, unsigned>> factor(const RatPoly& p);

}  // namespace crl
