#pragma once

#include <string>
#include <vector>

#include "crloop/exactmath/matrix.hpp"
#include "crloop/exactmath/real_algebraic.hpp"
#include "crloop/loop/loop.hpp"
#include "crloop/polyexp/polyexp.hpp"

namespace crl {

struct Eigenvalue {
    RealAlgebraic lambda;
    unsigned mult = 0;  // algebraic multiplicity
};

/// Distinct eigenvalues in ascending order. Throws UnsupportedLoop when
/// some eigenvalue is not real.
std::vector<Eigenvalue> spectrum(const Matrix& a);

/// Smallest k with rank(A^k) = rank(A^(k+1)).
std::size_t nilpotency_index(const Matrix& a);

/// up^n(x) = cl[i] for every n >= n0, one entry per loop variable.
struct ClosedForm {
    std::vector<std::string> vars;
    std::vector<PolyExp> cl;
    std::size_t n0 = 0;
};

/// Requires every eigenvalue of the loop to be real and non-negative
/// (chain first otherwise); throws UnsupportedLoop if not.
ClosedForm closed_form(const Loop& loop);

}  // namespace crl
