#include "crloop/exactmath/real_algebraic.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "crloop/exactmath/factor.hpp"

namespace crl {

// Working copy of an isolating interval that can be narrowed by bisection.
// For a rational value the interval is a point and bisection is a no-op.
struct AlgInterval {
    RatPoly p;
    Rational lo, hi;
    int sign_lo = 0;

    explicit AlgInterval(const RealAlgebraic& a) : p(a.poly_), lo(a.lo_), hi(a.hi_) {
        if (!p.is_zero()) sign_lo = p.sign_at(lo);
    }

    void bisect() {
        if (p.is_zero()) return;
        Rational mid = (lo + hi) * Rational(1, 2);
        if (p.sign_at(mid) == sign_lo)
            lo = mid;
        else
            hi = mid;
    }

    // Strictly positive or strictly negative interior, with no zero endpoint.
    void separate_from_zero() {
        while (!p.is_zero() && lo.sign() <= 0 && hi.sign() >= 0) bisect();
    }

    static RealAlgebraic make(RatPoly irreducible, Rational lo, Rational hi) {
        RealAlgebraic r;
        r.poly_ = std::move(irreducible);
        r.lo_ = std::move(lo);
        r.hi_ = std::move(hi);
        return r;
    }
};

namespace {

// irreducible has degree >= 2 and exactly one root in (lo, hi).
RealAlgebraic make_irrational(const RatPoly& irreducible, const Rational& lo, const Rational& hi) {
    return AlgInterval::make(irreducible, lo, hi);
}

// Irreducible factors of a defining polynomial, with Sturm sequences.
struct Candidates {
    std::vector<RatPoly> factors;
    std::vector<std::vector<RatPoly>> seqs;
};

// The defining polynomial depends only on the operation and the operand
// minimal polynomials, and the same few pairs recur constantly during
// elimination, so the factorizations are memoized per thread.
template <class Defining>
const Candidates& candidates(const std::string& key, Defining defining) {
    thread_local std::unordered_map<std::string, Candidates> cache;
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    if (cache.size() >= 4096) cache.clear();
    Candidates c;
    c.factors = irreducible_factors(squarefree_part(defining()));
    for (const auto& f : c.factors) c.seqs.push_back(f.degree() >= 2 ? sturm_sequence(f) : std::vector<RatPoly>{});
    return cache.emplace(key, std::move(c)).first->second;
}

// Picks the root of one of the candidate factors that lies inside the
// enclosure, narrowing the operand intervals until exactly one candidate
// root remains. The true value must lie in the closed enclosure.
template <class Enclose, class Refine>
RealAlgebraic isolate_value(const Candidates& cand, Enclose enclose, Refine refine) {
    const auto& factors = cand.factors;
    const auto& seqs = cand.seqs;
    while (true) {
        auto [lo, hi] = enclose();
        std::size_t total = 0, which = 0;
        for (std::size_t i = 0; i < factors.size() && total < 2; ++i) {
            std::size_t c;
            if (factors[i].degree() == 1) {
                Rational r = -factors[i].coeff(0) / factors[i].coeff(1);
                c = (lo <= r && r <= hi) ? 1 : 0;
            } else {
                c = lo < hi ? sturm_count(seqs[i], lo, hi) : 0;
            }
            if (c) which = i;
            total += c;
        }
        if (total == 1) {
            const RatPoly& f = factors[which];
            if (f.degree() == 1) return RealAlgebraic(-f.coeff(0) / f.coeff(1));
            return make_irrational(f, lo, hi);
        }
        if (total == 0 && lo == hi) throw std::logic_error("algebraic arithmetic: value lost");
        refine();
    }
}

std::strong_ordering compare_with_rational(const AlgInterval& a, const Rational& r) {
    if (r <= a.lo) return std::strong_ordering::greater;
    if (r >= a.hi) return std::strong_ordering::less;
    return a.p.sign_at(r) == a.sign_lo ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::strong_ordering reverse(std::strong_ordering o) {
    if (o == std::strong_ordering::less) return std::strong_ordering::greater;
    if (o == std::strong_ordering::greater) return std::strong_ordering::less;
    return o;
}

std::vector<RealAlgebraic> isolate_irreducible(const RatPoly& f) {
    std::vector<RealAlgebraic> out;
    if (f.degree() == 1) {
        out.emplace_back(-f.coeff(0) / f.coeff(1));
        return out;
    }
    auto seq = sturm_sequence(f);
    Rational b = f.root_bound();
    std::vector<std::pair<Rational, Rational>> todo{{-b, b}};
    while (!todo.empty()) {
        auto [lo, hi] = todo.back();
        todo.pop_back();
        std::size_t c = sturm_count(seq, lo, hi);
        if (c == 0) continue;
        if (c == 1) {
            out.push_back(make_irrational(f, lo, hi));
            continue;
        }
        Rational mid = (lo + hi) * Rational(1, 2);
        todo.emplace_back(lo, mid);
        todo.emplace_back(mid, hi);
    }
    return out;
}

}  // namespace

RealAlgebraic::RealAlgebraic(const Rational& r) : lo_(r), hi_(r) {}

RealAlgebraic RealAlgebraic::root_in(const RatPoly& p, const Rational& lo, const Rational& hi) {
    for (const auto& f : irreducible_factors(squarefree_part(p))) {
        if (sturm_count(f, lo, hi) != 1) continue;
        if (f.degree() == 1) return RealAlgebraic(-f.coeff(0) / f.coeff(1));
        return make_irrational(f, lo, hi);
    }
    throw std::invalid_argument("root_in: no root in the given interval");
}

const Rational& RealAlgebraic::rational() const {
    if (!is_rational()) throw std::logic_error("RealAlgebraic::rational on an irrational value");
    return lo_;
}

RatPoly RealAlgebraic::minpoly() const {
    if (is_rational()) return RatPoly::linear_root(lo_);
    return poly_.monic();
}

int RealAlgebraic::sign() const {
    if (is_rational()) return lo_.sign();
    AlgInterval a(*this);
    a.separate_from_zero();
    return a.lo.sign() >= 0 ? 1 : -1;
}

RealAlgebraic RealAlgebraic::operator-() const {
    if (is_rational()) return RealAlgebraic(-lo_);
    return make_irrational(poly_.negate_arg().primitive(), -hi_, -lo_);
}

RealAlgebraic RealAlgebraic::reciprocal() const {
    if (is_rational()) return RealAlgebraic(lo_.reciprocal());
    AlgInterval a(*this);
    a.separate_from_zero();
    return make_irrational(poly_.reversed().primitive(), a.hi.reciprocal(), a.lo.reciprocal());
}

RealAlgebraic operator+(const RealAlgebraic& a, const RealAlgebraic& b) {
    if (a.is_rational() && b.is_rational()) return RealAlgebraic(a.lo_ + b.lo_);
    if (a.is_rational()) return b + a;
    if (b.is_rational()) {
        const Rational& r = b.lo_;
        if (r.is_zero()) return a;
        return make_irrational(a.poly_.shift(-r).primitive(), a.lo_ + r, a.hi_ + r);
    }
    AlgInterval ia(a), ib(b);
    return isolate_value(
        candidates("+" + a.poly_.str() + "|" + b.poly_.str(), [&] { return resultant_sum(a.poly_, b.poly_); }),
        [&] { return std::pair{ia.lo + ib.lo, ia.hi + ib.hi}; },
        [&] {
            ia.bisect();
            ib.bisect();
        });
}

RealAlgebraic operator*(const RealAlgebraic& a, const RealAlgebraic& b) {
    if (a.is_zero() || b.is_zero()) return RealAlgebraic(0);
    if (a.is_rational() && b.is_rational()) return RealAlgebraic(a.lo_ * b.lo_);
    if (a.is_rational()) return b * a;
    if (b.is_rational()) {
        const Rational& r = b.lo_;
        if (r == Rational(1)) return a;
        Rational x = a.lo_ * r, y = a.hi_ * r;
        if (y < x) std::swap(x, y);
        return make_irrational(a.poly_.scale_arg(r.reciprocal()).primitive(), x, y);
    }
    AlgInterval ia(a), ib(b);
    return isolate_value(
        candidates("*" + a.poly_.str() + "|" + b.poly_.str(), [&] { return resultant_product(a.poly_, b.poly_); }),
        [&] {
            Rational c[4] = {ia.lo * ib.lo, ia.lo * ib.hi, ia.hi * ib.lo, ia.hi * ib.hi};
            return std::pair{*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
        },
        [&] {
            ia.bisect();
            ib.bisect();
        });
}

RealAlgebraic pow(const RealAlgebraic& a, unsigned long k) {
    if (k == 0) return RealAlgebraic(1);
    if (k == 1) return a;
    if (a.is_rational()) return RealAlgebraic(pow(a.rational(), k));
    AlgInterval ia(a);
    ia.separate_from_zero();
    RatPoly m = a.minpoly();
    return isolate_value(
        candidates("^" + std::to_string(k) + "|" + m.str(), [&] { return norm_poly(m, RatPoly::monomial(Rational(1), k)); }),
        [&] {
            Rational x = pow(ia.lo, k), y = pow(ia.hi, k);
            if (y < x) std::swap(x, y);
            return std::pair{x, y};
        },
        [&] { ia.bisect(); });
}

std::strong_ordering operator<=>(const RealAlgebraic& a, const RealAlgebraic& b) {
    if (a.is_rational() && b.is_rational()) return a.lo_ <=> b.lo_;
    if (a.is_rational()) return reverse(compare_with_rational(AlgInterval(b), a.lo_));
    if (b.is_rational()) return compare_with_rational(AlgInterval(a), b.lo_);
    if (a.poly_ == b.poly_) {
        Rational lo = std::max(a.lo_, b.lo_), hi = std::min(a.hi_, b.hi_);
        if (lo < hi && sturm_count(a.poly_, lo, hi) >= 1) return std::strong_ordering::equal;
    }
    AlgInterval ia(a), ib(b);
    while (!(ia.hi <= ib.lo || ib.hi <= ia.lo)) {
        ia.bisect();
        ib.bisect();
    }
    return ia.hi <= ib.lo ? std::strong_ordering::less : std::strong_ordering::greater;
}

RealAlgebraic RealAlgebraic::refined(const Rational& width) const {
    if (is_rational()) return *this;
    AlgInterval a(*this);
    while (a.hi - a.lo >= width) a.bisect();
    RealAlgebraic r = *this;
    r.lo_ = a.lo;
    r.hi_ = a.hi;
    return r;
}

double RealAlgebraic::to_double() const {
    if (is_rational()) return lo_.to_double();
    Rational scale = std::max({lo_.abs(), hi_.abs(), Rational(1)});
    RealAlgebraic r = refined(scale * Rational(1) / pow(Rational(2), 56));
    return ((r.lo_ + r.hi_) * Rational(1, 2)).to_double();
}

std::string RealAlgebraic::str() const {
    if (is_rational()) return lo_.str();
    char approx[32];
    std::snprintf(approx, sizeof approx, "%.6g", to_double());
    return "root(" + poly_.str("z") + ", (" + lo_.str() + ", " + hi_.str() + "))~" + approx;
}

std::vector<RealAlgebraic> isolate_real_roots(const RatPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    std::vector<RealAlgebraic> out;
    for (const auto& f : irreducible_factors(squarefree_part(p))) {
        auto roots = isolate_irreducible(f);
        out.insert(out.end(), roots.begin(), roots.end());
    }
    std::sort(out.begin(), out.end(), [](const RealAlgebraic& x, const RealAlgebraic& y) { return x < y; });
    return out;
}

}  // namespace crl
