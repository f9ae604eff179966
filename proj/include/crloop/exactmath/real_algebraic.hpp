#pragma once

#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <vector>

#include "crloop/exactmath/ratpoly.hpp"
#include "crloop/exactmath/rational.hpp"

namespace crl {

/// Exact real algebraic number.
///
/// Rational values are stored directly. An irrational value is the unique
/// root of an irreducible primitive integer polynomial (degree >= 2) inside
/// an open interval (lo, hi) with rational endpoints. Irreducibility makes
/// the representation canonical up to the interval, so equality is decided
/// exactly. Values are immutable; every refinement works on a local copy,
/// so instances can be shared freely between threads.
class RealAlgebraic {
public:
    RealAlgebraic() = default;
    RealAlgebraic(const Rational& r);  // NOLINT(google-explicit-constructor)
    template <std::integral T>
    RealAlgebraic(T v) : RealAlgebraic(Rational(v)) {}  // NOLINT(google-explicit-constructor)

    /// The root of the square-free polynomial p lying in (lo, hi]; p must have
    /// exactly one root there.
    static RealAlgebraic root_in(const RatPoly& p, const Rational& lo, const Rational& hi);

    bool is_rational() const { return poly_.is_zero(); }
    /// The value; only valid when is_rational().
    const Rational& rational() const;
    /// Monic minimal polynomial.
    RatPoly minpoly() const;
    /// Isolating interval; degenerate [r, r] for a rational r.
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }

    int sign() const;
    bool is_zero() const { return is_rational() && lo_.is_zero(); }

    RealAlgebraic operator-() const;
    RealAlgebraic reciprocal() const;
    friend RealAlgebraic operator+(const RealAlgebraic& a, const RealAlgebraic& b);
    friend RealAlgebraic operator-(const RealAlgebraic& a, const RealAlgebraic& b) { return a + (-b); }
    friend RealAlgebraic operator*(const RealAlgebraic& a, const RealAlgebraic& b);
    friend RealAlgebraic operator/(const RealAlgebraic& a, const RealAlgebraic& b) { return a * b.reciprocal(); }
    RealAlgebraic& operator+=(const RealAlgebraic& o) { return *this = *this + o; }
    RealAlgebraic& operator-=(const RealAlgebraic& o) { return *this = *this - o; }
    RealAlgebraic& operator*=(const RealAlgebraic& o) { return *this = *this * o; }

    friend std::strong_ordering operator<=>(const RealAlgebraic& a, const RealAlgebraic& b);
    friend bool operator==(const RealAlgebraic& a, const RealAlgebraic& b) { return (a <=> b) == 0; }

    /// Copy whose isolating interval is narrower than width.
    RealAlgebraic refined(const Rational& width) const;
    double to_double() const;
    /// "3/2" for rationals, "root(z^2 - 2, (1, 3/2))~1.41421" otherwise.
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const RealAlgebraic& a) { return os << a.str(); }

private:
    friend struct AlgInterval;
    RatPoly poly_;  // zero polynomial for rationals
    Rational lo_, hi_;
};

RealAlgebraic pow(const RealAlgebraic& a, unsigned long k);

/// All distinct real roots of a nonzero polynomial, ascending.
std::vector<RealAlgebraic> isolate_real_roots(const RatPoly& p);

}  // namespace crl
