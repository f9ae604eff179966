#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "crloop/exactmath/factor.hpp"
#include "crloop/exactmath/real_algebraic.hpp"

using namespace crl;

namespace {

RatPoly poly(std::initializer_list<long> low_to_high) {
    std::vector<Rational> c;
    for (long v : low_to_high) c.emplace_back(v);
    return RatPoly(c);
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
    return Rational(mpz_class(num(rng)), mpz_class(den(rng)));
}

RealAlgebraic sqrt_of(long k) { return RealAlgebraic::root_in(poly({-k, 0, 1}), Rational(0), Rational(k + 1)); }

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 4).num() == 1);
    CHECK(Rational(2, 4).den() == 2);
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK_THROWS_AS(Rational(5, 7) / Rational(0), std::domain_error);
    CHECK(Rational::parse(" -7/21 ") == Rational(-1, 3));
    CHECK_THROWS(Rational::parse("1/"));
    CHECK_THROWS(Rational::parse("x"));
}

TEST_CASE("rational field axioms on random values") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("simplest rational in an interval") {
    CHECK(simplest_between(Rational(1, 3), Rational(3, 4)) == Rational(1, 2));
    CHECK(simplest_between(Rational(-1), Rational(1)) == Rational(0));
    CHECK(simplest_between(Rational(7, 5), Rational(10, 7)) == Rational(7, 5));
    CHECK(simplest_between(Rational(-22, 7), Rational(-3)) == Rational(-3));
}

TEST_CASE("sturm counts") {
    CHECK(sturm_count(poly({-2, 0, 1}), Rational(0), std::nullopt) == 1);
    CHECK(sturm_count(poly({1, 0, 1}), std::nullopt, std::nullopt) == 0);
    CHECK(sturm_count(poly({-2, 0, 1}), std::nullopt, std::nullopt) == 2);
    // (z-1)^2 (z+2): distinct roots only
    CHECK(sturm_count(poly({2, -3, 0, 1}), std::nullopt, std::nullopt) == 2);
    // half-open: root at the upper end counts, at the lower end does not
    CHECK(sturm_count(poly({-1, 1}), Rational(0), Rational(1)) == 1);
    CHECK(sturm_count(poly({-1, 1}), Rational(1), Rational(2)) == 0);
}

TEST_CASE("resultant-derived polynomials") {
    // roots of z^2-2 plus roots of z^2-3: z^4 - 10 z^2 + 1
    CHECK(resultant_sum(poly({-2, 0, 1}), poly({-3, 0, 1})).monic() == poly({1, 0, -10, 0, 1}));
    // products: (z^2 - 6)^2
    CHECK(resultant_product(poly({-2, 0, 1}), poly({-3, 0, 1})).monic() == poly({36, 0, -12, 0, 1}));
    // squares of roots of z^2 - z - 1: z^2 - 3z + 1
    CHECK(norm_poly(poly({-1, -1, 1}), poly({0, 0, 1})).monic() == poly({1, -3, 1}));
}

TEST_CASE("factorization over the rationals") {
    CHECK(irreducible_factors(poly({1, 0, 0, 0, 1})).size() == 1);
    CHECK(irreducible_factors(poly({1, 0, -10, 0, 1})).size() == 1);
    auto f = irreducible_factors(poly({6, 0, -5, 0, 1}));
    REQUIRE(f.size() == 2);
    CHECK(f[0] * f[1] == poly({6, 0, -5, 0, 1}));
    // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
    auto g = irreducible_factors(poly({-1, 0, 0, 0, 0, 0, 0, 0, 1}));
    CHECK(g.size() == 4);
    // Swinnerton-Dyer polynomial for sqrt2, sqrt3, sqrt5 is irreducible of degree 8
    RatPoly sd = resultant_sum(poly({1, 0, -10, 0, 1}), poly({-5, 0, 1})).primitive();
    CHECK(sd.degree() == 8);
    CHECK(irreducible_factors(sd).size() == 1);
    // repeated and scaled content
    auto h = factor(poly({-4, 12, -9, -6, 9}) * Rational(3));  // 3 (3z^2 - 2)... multiplicity check below
    RatPoly prod(Rational(1));
    for (const auto& [q, m] : h)
        for (unsigned i = 0; i < m; ++i) prod *= q;
    CHECK(prod.monic() == poly({-4, 12, -9, -6, 9}).monic());
}

TEST_CASE("factorization product property on random polynomials") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(-4, 4), deg(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        RatPoly p(Rational(1));
        int parts = 1 + trial % 3;
        for (int k = 0; k < parts; ++k) {
            std::vector<Rational> c;
            int d = static_cast<int>(deg(rng));
            for (int i = 0; i < d; ++i) c.emplace_back(coef(rng));
            c.emplace_back(1 + std::abs(coef(rng)));
            p *= RatPoly(c);
        }
        auto fs = factor(p);
        RatPoly prod(Rational(1));
        for (const auto& [q, m] : fs) {
            CHECK(q.lead().sign() > 0);
            for (unsigned i = 0; i < m; ++i) prod *= q;
        }
        CHECK(prod.monic() == p.monic());
    }
}

TEST_CASE("isolating real roots") {
    auto r = isolate_real_roots(poly({-2, 0, 1}));
    REQUIRE(r.size() == 2);
    CHECK(r[0].to_double() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r[1].to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    auto s = isolate_real_roots(poly({1, -2, 1}));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == RealAlgebraic(1));

    auto t = isolate_real_roots(poly({0, -1, 0, 1}));
    REQUIRE(t.size() == 3);
    CHECK(t[0] == RealAlgebraic(-1));
    CHECK(t[1] == RealAlgebraic(0));
    CHECK(t[2] == RealAlgebraic(1));
}

TEST_CASE("isolation agrees with sturm counts and sign changes") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> coef(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rational> c;
        for (int i = 0; i < 5; ++i) c.emplace_back(coef(rng));
        c.emplace_back(1);
        RatPoly p(c);
        auto roots = isolate_real_roots(p);
        CHECK(roots.size() == sturm_count(p, std::nullopt, std::nullopt));
        RatPoly sq = squarefree_part(p);
        for (const auto& a : roots) {
            if (a.is_rational()) {
                CHECK(sq.eval(a.rational()).is_zero());
            } else {
                RatPoly m = a.minpoly();
                CHECK(m.sign_at(a.lo()) * m.sign_at(a.hi()) < 0);
                CHECK((sq % m).is_zero());
            }
        }
        for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i - 1] < roots[i]);
    }
}

TEST_CASE("algebraic arithmetic") {
    RealAlgebraic r2 = sqrt_of(2), r3 = sqrt_of(3);
    CHECK(r2 * r2 == RealAlgebraic(2));
    CHECK((r2 * r2).is_rational());
    CHECK((r2 + (-r2)).is_zero());
    RealAlgebraic r6 = r2 * r3;
    CHECK(r6.minpoly() == poly({-6, 0, 1}));
    CHECK(pow(r6, 2) == RealAlgebraic(6));
    CHECK(r6.to_double() == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
    CHECK((r2 + r3).to_double() == doctest::Approx(std::sqrt(2.0) + std::sqrt(3.0)).epsilon(1e-12));
    CHECK((r2 / r3).to_double() == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(r2.reciprocal() * r2 == RealAlgebraic(1));
    CHECK((r2 - Rational(3, 2)).sign() == -1);
    CHECK((r2 - Rational(1)).sign() == 1);
    CHECK(RealAlgebraic(0).sign() == 0);
    CHECK((r2 <=> RealAlgebraic(Rational(3, 2))) == std::strong_ordering::less);
    CHECK((RealAlgebraic(2) <=> RealAlgebraic(2)) == std::strong_ordering::equal);
    CHECK((r2 <=> RealAlgebraic(1)) == std::strong_ordering::greater);
    CHECK(pow(r2, 2) == RealAlgebraic(2));
    CHECK(pow(RealAlgebraic(2), 3) == RealAlgebraic(8));
    CHECK(pow(r3, 0) == RealAlgebraic(1));
    CHECK(pow(-r2, 3).to_double() == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-12));
    // golden ratio: phi^2 = phi + 1
    RealAlgebraic phi = RealAlgebraic::root_in(poly({-1, -1, 1}), Rational(1), Rational(2));
    CHECK(phi * phi == phi + RealAlgebraic(1));
    CHECK(pow(phi, 10) == phi * RealAlgebraic(55) + RealAlgebraic(34));
}

TEST_CASE("algebraic arithmetic agrees with rational arithmetic on embedded rationals") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Rational p = random_rational(rng), q = random_rational(rng);
        CHECK(RealAlgebraic(p) + RealAlgebraic(q) == RealAlgebraic(p + q));
        CHECK(RealAlgebraic(p) - RealAlgebraic(q) == RealAlgebraic(p - q));
        CHECK(RealAlgebraic(p) * RealAlgebraic(q) == RealAlgebraic(p * q));
        if (!q.is_zero()) CHECK(RealAlgebraic(p) / RealAlgebraic(q) == RealAlgebraic(p / q));
    }
}

TEST_CASE("sign symmetry and total order on mixed algebraic values") {
    std::vector<RealAlgebraic> pool;
    for (long k : {2, 3, 5, 6}) {
        pool.push_back(sqrt_of(k));
        pool.push_back(-sqrt_of(k));
    }
    pool.push_back(sqrt_of(2) + sqrt_of(3));
    pool.push_back(sqrt_of(2) * Rational(7, 5));
    pool.push_back(RealAlgebraic(Rational(7, 5)));
    pool.push_back(RealAlgebraic(Rational(-17, 12)));
    pool.push_back(RealAlgebraic(0));
    for (const auto& a : pool) {
        CHECK(a.sign() == -(-a).sign());
        CHECK(a.sign() == (a.to_double() > 0 ? 1 : a.to_double() < 0 ? -1 : 0));
    }
    for (const auto& a : pool)
        for (const auto& b : pool) {
            auto ab = a <=> b, ba = b <=> a;
            CHECK((ab < 0) == (ba > 0));
            CHECK((ab == 0) == (ba == 0));
            if (ab != 0) CHECK((ab < 0) == (a.to_double() < b.to_double()));
            for (const auto& c : pool)
                if (a < b && b < c) CHECK(a < c);
        }
}
