#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "crloop/exactmath/rational.hpp"

namespace crl {

/// Dense univariate polynomial over the rationals, coefficients stored from
/// the constant term upward. The zero polynomial has no coefficients; any
/// other polynomial has a nonzero leading coefficient.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs);
    RatPoly(const Rational& c);  // NOLINT(google-explicit-constructor)

    static RatPoly monomial(const Rational& c, std::size_t degree);
    /// z - r
    static RatPoly linear_root(const Rational& r);

    const std::vector<Rational>& coeffs() const { return c_; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& lead() const { return c_.back(); }

    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const { return eval(x).sign(); }
    /// Sign for x -> +infinity (sign_at_neg_inf for x -> -infinity).
    int sign_at_pos_inf() const { return is_zero() ? 0 : lead().sign(); }
    int sign_at_neg_inf() const;

    RatPoly operator-() const;
    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);
    RatPoly& operator*=(const RatPoly& o);
    RatPoly& operator*=(const Rational& s);
    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
    friend RatPoly operator*(RatPoly a, const Rational& s) { return a *= s; }
    friend bool operator==(const RatPoly&, const RatPoly&) = default;

    /// Quotient and remainder; throws std::domain_error for a zero divisor.
    std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const;
    RatPoly operator/(const RatPoly& d) const { return divmod(d).first; }
    RatPoly operator%(const RatPoly& d) const { return divmod(d).second; }

    RatPoly derivative() const;
    RatPoly monic() const;
    /// Integer coefficients with gcd 1 and positive leading coefficient.
    RatPoly primitive() const;

    /// p(z + r)
    RatPoly shift(const Rational& r) const;
    /// p(s * z)
    RatPoly scale_arg(const Rational& s) const;
    /// z^deg * p(1/z)
    RatPoly reversed() const;
    /// p(-z)
    RatPoly negate_arg() const;
    RatPoly compose(const RatPoly& inner) const;
    /// this^e mod m
    RatPoly pow_mod(unsigned long e, const RatPoly& m) const;

    /// Upper bound on the absolute value of every real root (Cauchy).
    Rational root_bound() const;

    std::string str(const std::string& var = "z") const;
    friend std::ostream& operator<<(std::ostream& os, const RatPoly& p) { return os << p.str(); }

private:
    void trim();
    std::vector<Rational> c_;
};

/// Monic gcd (zero if both inputs are zero).
RatPoly gcd(RatPoly a, RatPoly b);

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
struct Xgcd {
    RatPoly g, s, t;
};
Xgcd xgcd(const RatPoly& a, const RatPoly& b);

RatPoly squarefree_part(const RatPoly& p);

/// Yun's decomposition p = c * prod f_i^i; returns the nonconstant monic f_i
/// paired with their multiplicity i.
std::vector<std::pair<RatPoly, unsigned>> squarefree_decomposition(const RatPoly& p);

/// Resultant of two nonzero polynomials.
Rational resultant(const RatPoly& f, const RatPoly& g);

/// Polynomial whose roots are all sums alpha + beta over roots alpha of p,
/// beta of q (Res_y(p(y), q(z - y))).
RatPoly resultant_sum(const RatPoly& p, const RatPoly& q);
/// Roots are all products alpha * beta (Res_y(p(y), y^deg q * q(z / y))).
/// Requires q(0) != 0.
RatPoly resultant_product(const RatPoly& p, const RatPoly& q);
/// Roots are g(alpha) for the roots alpha of p (Res_y(p(y), z - g(y))).
RatPoly norm_poly(const RatPoly& p, const RatPoly& g);

/// Interpolating polynomial through (xs[i], ys[i]); xs pairwise distinct.
RatPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

/// Sturm sequence of the square-free part of p.
std::vector<RatPoly> sturm_sequence(const RatPoly& p);

/// Number of distinct real roots of p in (lo, hi]; an empty bound means
/// -infinity (lo) or +infinity (hi). p must be nonzero.
std::size_t sturm_count(const RatPoly& p, const std::optional<Rational>& lo,
                        const std::optional<Rational>& hi);
std::size_t sturm_count(const std::vector<RatPoly>& seq, const std::optional<Rational>& lo,
                        const std::optional<Rational>& hi);

}  // namespace crl
