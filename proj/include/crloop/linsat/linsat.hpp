#pragma once

#include <cstddef>
#include <vector>

#include "crloop/loop/loop.hpp"

namespace crl {

/// Exact satisfiability over Q of a conjunction of t > 0 / t >= 0 by the
/// simplex method (Bland's rule, rational dictionary). Strict conjuncts
/// share one slack variable s <= 1 that is maximized; the system is
/// satisfiable iff the feasible region is nonempty and, when strict
/// conjuncts exist, s can be made positive.
bool is_satisfiable(const std::vector<Inequation>& system);

/// The same question answered by Fourier-Motzkin elimination with the
/// strict/weak combination rule. Exponential in the worst case; throws
/// ResourceLimit when more than max_conjuncts are alive at once.
bool fm_satisfiable(const std::vector<Inequation>& system, std::size_t max_conjuncts = 200000);

/// phi && phi[x/up(x)] && ... && phi[x/up^c(x)]
std::vector<Inequation> unroll_system(const Loop& loop, std::size_t c);

}  // namespace crl
