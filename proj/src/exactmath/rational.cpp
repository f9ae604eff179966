#include "crloop/exactmath/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace crl {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("division by zero");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0) throw std::domain_error("division by zero");
    q_.canonicalize();
}

namespace {

bool parse_integer(std::string_view s, mpz_class& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    std::string digits(s.substr(s[0] == '+' ? 1 : 0));
    return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    mpz_class num, den = 1;
    if (slash == std::string_view::npos) {
        if (!parse_integer(text, num))
            throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    } else {
        auto lhs = trim(text.substr(0, slash));
        auto rhs = trim(text.substr(slash + 1));
        if (!parse_integer(lhs, num) || !parse_integer(rhs, den) || rhs.front() == '-')
            throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

Rational Rational::abs() const { return Rational(::abs(q_)); }

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("division by zero");
    return Rational(mpq_class(q_.get_den(), q_.get_num()));
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::string Rational::str() const { return q_.get_str(); }

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

std::size_t Rational::hash() const {
    std::size_t h = mpz_get_ui(q_.get_num_mpz_t()) * 1000003u;
    h ^= mpz_get_ui(q_.get_den_mpz_t()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(sign() + 1);
}

Rational pow(const Rational& base, unsigned long exp) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), exp);
    mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), exp);
    return Rational(n, d);
}

namespace {

// Stern-Brocot descent for 0 <= lo <= hi, via continued fractions.
Rational simplest_nonneg(const Rational& lo, const Rational& hi) {
    mpz_class fl = lo.floor();
    if (Rational(fl) == lo) return lo;
    mpz_class next = fl + 1;
    if (Rational(next) <= hi) return Rational(next);
    // lo and hi share the integer part fl; recurse on reciprocals of the fractional parts.
    Rational lo_frac = lo - Rational(fl);
    Rational hi_frac = hi - Rational(fl);
    Rational inner = simplest_nonneg(hi_frac.reciprocal(), lo_frac.reciprocal());
    return Rational(fl) + inner.reciprocal();
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw std::invalid_argument("simplest_between: empty interval");
    if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
    if (hi.sign() < 0) return -simplest_nonneg(-hi, -lo);
    return simplest_nonneg(lo, hi);
}

}  // namespace crl
