#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace crl {

/// Arbitrary-precision rational number, always in canonical form
/// (positive denominator, numerator and denominator coprime).
class Rational {
public:
    Rational() = default;

    template <std::signed_integral T>
    Rational(T v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

    template <std::unsigned_integral T>
    Rational(T v) : q_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)

    Rational(const mpz_class& n) : q_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(mpq_class q);

    /// Parses "n", "-n" or "p/q" (optional surrounding whitespace).
    /// Throws std::invalid_argument on malformed input and
    /// std::domain_error on a zero denominator.
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational abs() const;
    Rational reciprocal() const;
    mpz_class floor() const;
    double to_double() const { return q_.get_d(); }
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    std::size_t hash() const;

private:
    mpq_class q_;
};

Rational pow(const Rational& base, unsigned long exp);

/// Simplest rational (smallest denominator, then smallest magnitude
/// numerator) in the closed interval [lo, hi]. Requires lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace crl

template <>
struct std::hash<crl::Rational> {
    std::size_t operator()(const crl::Rational& r) const noexcept { return r.hash(); }
};
