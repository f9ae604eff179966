#include "crloop/exactmath/ratpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace crl {

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly::RatPoly(const Rational& c) {
    if (!c.is_zero()) c_.push_back(c);
}

RatPoly RatPoly::monomial(const Rational& c, std::size_t degree) {
    if (c.is_zero()) return {};
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::linear_root(const Rational& r) { return RatPoly({-r, Rational(1)}); }

void RatPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational RatPoly::eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

int RatPoly::sign_at_neg_inf() const {
    if (is_zero()) return 0;
    return degree() % 2 == 0 ? lead().sign() : -lead().sign();
}

RatPoly RatPoly::operator-() const {
    RatPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& o) {
    if (is_zero() || o.is_zero()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
}

RatPoly& RatPoly::operator*=(const Rational& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (degree() < d.degree()) return {RatPoly(), *this};
    std::vector<Rational> rem = c_;
    std::vector<Rational> quo(c_.size() - d.c_.size() + 1);
    Rational inv_lead = d.lead().reciprocal();
    for (int k = degree() - d.degree(); k >= 0; --k) {
        Rational f = rem[k + d.degree()] * inv_lead;
        quo[k] = f;
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= f * d.c_[j];
    }
    rem.resize(d.c_.size() - 1);
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(i);
    return RatPoly(std::move(r));
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return {};
    return *this * lead().reciprocal();
}

RatPoly RatPoly::primitive() const {
    if (is_zero()) return {};
    mpz_class l = 1;
    for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.raw().get_den_mpz_t());
    std::vector<mpz_class> ints(c_.size());
    mpz_class g = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        mpq_class v = c_[i].raw() * l;
        ints[i] = v.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (ints.back() < 0) g = -g;
    std::vector<Rational> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = Rational(mpz_class(ints[i] / g));
    return RatPoly(std::move(out));
}

RatPoly RatPoly::shift(const Rational& r) const {
    // Horner with (z + r).
    RatPoly acc;
    RatPoly lin({r, Rational(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= lin;
        acc += RatPoly(*it);
    }
    return acc;
}

RatPoly RatPoly::scale_arg(const Rational& s) const {
    RatPoly r = *this;
    Rational f(1);
    for (auto& c : r.c_) {
        c *= f;
        f *= s;
    }
    r.trim();
    return r;
}

RatPoly RatPoly::reversed() const {
    std::vector<Rational> r(c_.rbegin(), c_.rend());
    return RatPoly(std::move(r));
}

RatPoly RatPoly::negate_arg() const {
    RatPoly r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
}

RatPoly RatPoly::compose(const RatPoly& inner) const {
    RatPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= inner;
        acc += RatPoly(*it);
    }
    return acc;
}

RatPoly RatPoly::pow_mod(unsigned long e, const RatPoly& m) const {
    RatPoly result(Rational(1));
    result = result % m;
    RatPoly base = *this % m;
    while (e > 0) {
        if (e & 1UL) result = (result * base) % m;
        e >>= 1;
        if (e) base = (base * base) % m;
    }
    return result;
}

Rational RatPoly::root_bound() const {
    if (degree() <= 0) return Rational(1);
    Rational best;
    Rational inv = lead().reciprocal().abs();
    for (int i = 0; i < degree(); ++i) {
        Rational v = c_[i].abs() * inv;
        if (v > best) best = v;
    }
    return best + Rational(1);
}

std::string RatPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[i];
        if (c.is_zero()) continue;
        Rational mag = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = mag == Rational(1);
        if (i == 0) {
            os << mag;
        } else {
            if (!unit) os << mag << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = a % b;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

Xgcd xgcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b;
    RatPoly s0(Rational(1)), s1;
    RatPoly t0, t1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        RatPoly s2 = s0 - q * s1;
        RatPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {RatPoly(), RatPoly(), RatPoly()};
    Rational inv = r0.lead().reciprocal();
    return {r0 * inv, s0 * inv, t0 * inv};
}

RatPoly squarefree_part(const RatPoly& p) {
    if (p.degree() <= 0) return p.monic();
    RatPoly g = gcd(p, p.derivative());
    return (p / g).monic();
}

std::vector<std::pair<RatPoly, unsigned>> squarefree_decomposition(const RatPoly& p) {
    std::vector<std::pair<RatPoly, unsigned>> out;
    if (p.degree() <= 0) return out;
    RatPoly f = p.monic();
    RatPoly df = f.derivative();
    RatPoly a = gcd(f, df);
    RatPoly b = f / a;
    RatPoly c = df / a;
    RatPoly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        RatPoly ai = gcd(b, d);
        b = b / ai;
        c = d / ai;
        d = c - b.derivative();
        if (ai.degree() > 0) out.emplace_back(ai.monic(), i);
        ++i;
    }
    return out;
}

Rational resultant(const RatPoly& f0, const RatPoly& g0) {
    if (f0.is_zero() || g0.is_zero()) return Rational(0);
    RatPoly f = f0, g = g0;
    Rational acc(1);
    while (true) {
        int m = f.degree(), n = g.degree();
        if (n == 0) return acc * pow(g.lead(), static_cast<unsigned long>(m));
        RatPoly r = f % g;
        if (r.is_zero()) return Rational(0);
        if ((m % 2 == 1) && (n % 2 == 1)) acc = -acc;
        acc *= pow(g.lead(), static_cast<unsigned long>(m - r.degree()));
        f = std::move(g);
        g = std::move(r);
    }
}

RatPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    const std::size_t n = xs.size();
    std::vector<Rational> dd = ys;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    RatPoly acc;
    for (std::size_t k = n; k-- > 0;) {
        acc *= RatPoly({-xs[k], Rational(1)});
        acc += RatPoly(dd[k]);
    }
    return acc;
}

namespace {

template <class Specialize>
RatPoly resultant_by_interpolation(std::size_t degree, Specialize&& at) {
    std::vector<Rational> xs, ys;
    xs.reserve(degree + 1);
    ys.reserve(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k) {
        Rational z0(static_cast<long>(k));
        xs.push_back(z0);
        ys.push_back(at(z0));
    }
    return interpolate(xs, ys);
}

}  // namespace

RatPoly resultant_sum(const RatPoly& p, const RatPoly& q) {
    RatPoly q_neg = q.negate_arg();
    auto deg = static_cast<std::size_t>(p.degree() * q.degree());
    return resultant_by_interpolation(deg, [&](const Rational& z0) {
        return resultant(p, q_neg.shift(-z0));
    });
}

RatPoly resultant_product(const RatPoly& p, const RatPoly& q) {
    if (q.coeff(0).is_zero()) throw std::invalid_argument("resultant_product: q(0) = 0");
    const int n = q.degree();
    auto deg = static_cast<std::size_t>(p.degree() * n);
    return resultant_by_interpolation(deg, [&](const Rational& z0) {
        std::vector<Rational> c(n + 1);
        Rational zk(1);
        for (int k = 0; k <= n; ++k) {
            c[n - k] = q.coeff(k) * zk;
            zk *= z0;
        }
        return resultant(p, RatPoly(std::move(c)));
    });
}

RatPoly norm_poly(const RatPoly& p, const RatPoly& g) {
    RatPoly gr = g % p;
    auto deg = static_cast<std::size_t>(p.degree());
    RatPoly res = resultant_by_interpolation(deg, [&](const Rational& z0) {
        RatPoly h = RatPoly(z0) - gr;
        return h.is_zero() ? Rational(0) : resultant(p, h);
    });
    return res;
}

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
    std::vector<RatPoly> seq;
    RatPoly s0 = squarefree_part(p);
    if (s0.is_zero()) return seq;
    seq.push_back(s0);
    RatPoly s1 = s0.derivative();
    while (!s1.is_zero()) {
        // Scaling by a positive constant keeps every sign pattern intact.
        s1 *= s1.lead().reciprocal().abs();
        seq.push_back(s1);
        RatPoly r = -(seq[seq.size() - 2] % seq.back());
        s1 = std::move(r);
    }
    return seq;
}

namespace {

std::size_t variations(const std::vector<RatPoly>& seq, const std::optional<Rational>& x, bool at_neg_inf) {
    std::size_t v = 0;
    int prev = 0;
    for (const auto& s : seq) {
        int sg = x ? s.sign_at(*x) : (at_neg_inf ? s.sign_at_neg_inf() : s.sign_at_pos_inf());
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++v;
        prev = sg;
    }
    return v;
}

}  // namespace

std::size_t sturm_count(const std::vector<RatPoly>& seq, const std::optional<Rational>& lo,
                        const std::optional<Rational>& hi) {
    if (seq.empty()) throw std::invalid_argument("sturm_count: zero polynomial");
    if (lo && hi && !(*lo < *hi)) return 0;
    std::size_t vlo = variations(seq, lo, true);
    std::size_t vhi = variations(seq, hi, false);
    return vlo >= vhi ? vlo - vhi : 0;
}

std::size_t sturm_count(const RatPoly& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    if (p.is_zero()) throw std::invalid_argument("sturm_count: zero polynomial");
    return sturm_count(sturm_sequence(p), lo, hi);
}

}  // namespace crl
