#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crloop/loop/loop.hpp"
#include "crloop/loop/parser.hpp"
#include "support.hpp"

using namespace crl;
using namespace crl::testing;

namespace {

Inequation ineq(std::initializer_list<std::pair<const char*, long>> coeffs, long constant, Rel rel) {
    Inequation q;
    for (auto [v, c] : coeffs) q.term.add(v, Rational(c));
    q.term.constant = Rational(constant);
    q.rel = rel;
    return q;
}

Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    Matrix m;
    for (auto r : rows) {
        Vector row;
        for (long v : r) row.emplace_back(v);
        m.push_back(row);
    }
    return m;
}

Vector vec(std::initializer_list<long> xs) {
    Vector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Loop with_matrix(Matrix a) {
    Loop l;
    l.vars = var_names(a.size());
    l.b = Vector(a.size(), Rational(0));
    l.A = std::move(a);
    return l;
}

}  // namespace

TEST_CASE("parse the leading example") {
    Loop l = corpus_loop("example1.loop");
    CHECK(l.vars == std::vector<std::string>{"x", "y"});
    CHECK(l.A == mat({{1, 0}, {0, 2}}));
    CHECK(l.b == vec({1, 0}));
    REQUIRE(l.guard.conjuncts.size() == 2);
    CHECK(l.guard.conjuncts[0] == ineq({{"x", 1}, {"y", 1}}, 0, Rel::Ge));
    CHECK(l.guard.conjuncts[1] == ineq({{"x", -1}, {"y", -1}}, 10, Rel::Ge));
}

TEST_CASE("comparison normalization") {
    Loop l = parse_loop("vars x\nguard x < 1\nupdate x := x");
    CHECK(l.guard.conjuncts == std::vector<Inequation>{ineq({{"x", -1}}, 1, Rel::Gt)});
    CHECK(l.A == mat({{1}}));
    CHECK(l.b == vec({0}));

    Loop e = parse_loop("vars x, y; guard x = 2*y");
    CHECK(e.guard.conjuncts ==
          std::vector<Inequation>{ineq({{"x", -1}, {"y", 2}}, 0, Rel::Ge), ineq({{"x", 1}, {"y", -2}}, 0, Rel::Ge)});

    Loop g = parse_loop("vars x\nguard 3 > x >= -1/2");
    CHECK(g.guard.conjuncts.size() == 2);
    CHECK(g.guard.conjuncts[0].rel == Rel::Gt);
    CHECK(g.guard.conjuncts[1].term.constant == Rational(1, 2));
}

TEST_CASE("parser accepts the expression forms of the language") {
    Loop l = parse_loop(
        "# comment line\n"
        "vars a, b  # trailing comment\n"
        "guard a + -2*b - (a - 3) >= 0 && true_ >= 0\n"
        "vars true_\n"
        "update a := -(a + b)/2 + 2^3\n"
        "update b := 1/3*a - b*4\n");
    CHECK(l.vars == std::vector<std::string>{"a", "b", "true_"});
    CHECK(l.A[0] == Vector{Rational(-1, 2), Rational(-1, 2), Rational(0)});
    CHECK(l.b[0] == Rational(8));
    CHECK(l.A[1] == Vector{Rational(1, 3), Rational(-4), Rational(0)});
    CHECK(l.guard.conjuncts[0] == ineq({{"b", -2}}, 3, Rel::Ge));
    CHECK(parse_loop("vars x\nguard true").guard.conjuncts.empty());
    CHECK(parse_loop("vars x").guard.conjuncts.empty());
}

TEST_CASE("parser errors carry positions") {
    CHECK_THROWS_WITH_AS(parse_loop("vars x, y\nupdate x := x*y"), doctest::Contains("nonlinear"), ParseError);
    CHECK_THROWS_WITH_AS(parse_loop("vars x\nupdate x := 2^x"), doctest::Contains("exponent"), ParseError);
    CHECK_THROWS_WITH_AS(parse_loop("vars x\nupdate x := x/x"), doctest::Contains("division"), ParseError);
    CHECK_THROWS_WITH_AS(parse_loop("vars x\nguard z >= 0"), doctest::Contains("unknown variable"), ParseError);
    CHECK_THROWS_WITH_AS(parse_loop("vars x\nupdate x := 1\nupdate x := 2"), doctest::Contains("duplicate"),
                         ParseError);
    CHECK_THROWS_AS(parse_loop("guard 1 >= 0"), ParseError);
    CHECK_THROWS_AS(parse_loop("vars x\nguard x >= "), ParseError);
    CHECK_THROWS_AS(parse_loop("vars x\nguard x"), ParseError);
    CHECK_THROWS_AS(parse_loop("vars x\nupdate x = 1"), ParseError);
    try {
        parse_loop("vars x\n\nguard x >= @");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 12);
    }
}

TEST_CASE("apply_update examples") {
    Loop ex1 = corpus_loop("example1.loop");
    CHECK(apply_update(ex1, vec({0, 3})) == vec({1, 6}));
    Loop nil = corpus_loop("nilpotent_shift.loop");
    CHECK(nil.A == mat({{0, 1}, {0, 0}}));
    CHECK(apply_update(nil, vec({5, 7})) == vec({7, 1}));
    Loop id = parse_loop("vars x, y");
    CHECK(apply_update(id, vec({-4, 9})) == vec({-4, 9}));
}

TEST_CASE("eigenvalue predicates") {
    CHECK_FALSE(has_negative_eigenvalue(with_matrix(mat({{1, 0}, {0, 2}}))));
    CHECK(has_negative_eigenvalue(with_matrix(mat({{-1}}))));
    CHECK_FALSE(has_negative_eigenvalue(with_matrix(mat({{0, 1}, {-1, 0}}))));
    CHECK(all_eigenvalues_real(with_matrix(mat({{1, 1}, {0, 1}}))));
    CHECK_FALSE(all_eigenvalues_real(with_matrix(mat({{0, 1}, {-1, 0}}))));
    CHECK(all_eigenvalues_real(with_matrix(mat({{0, 2}, {2, 0}}))));
    CHECK(has_negative_eigenvalue(with_matrix(mat({{0, 2}, {2, 0}}))));
    // x^3 - 2: one real root, two complex
    CHECK_FALSE(all_eigenvalues_real(with_matrix(mat({{0, 1, 0}, {0, 0, 1}, {2, 0, 0}}))));
}

TEST_CASE("chain examples") {
    Loop c = chain(corpus_loop("example1.loop"));
    CHECK(c.A == mat({{1, 0}, {0, 4}}));
    CHECK(c.b == vec({2, 0}));
    CHECK(c.guard.conjuncts == std::vector<Inequation>{
                                   ineq({{"x", 1}, {"y", 1}}, 0, Rel::Ge),
                                   ineq({{"x", -1}, {"y", -1}}, 10, Rel::Ge),
                                   ineq({{"x", 1}, {"y", 2}}, 1, Rel::Ge),
                                   ineq({{"x", -1}, {"y", -2}}, 9, Rel::Ge),
                               });

    Loop n = chain(corpus_loop("negate_minus_one.loop"));
    CHECK(n.A == mat({{1}}));
    CHECK(n.b == vec({0}));
    CHECK(n.guard.conjuncts ==
          std::vector<Inequation>{ineq({{"x", 1}}, 0, Rel::Ge), ineq({{"x", -1}}, -1, Rel::Ge)});

    Loop id = parse_loop("vars x\nguard x > 2");
    Loop ci = chain(id);
    CHECK(ci.A == id.A);
    CHECK(ci.guard.conjuncts.size() == 2);
    CHECK(ci.guard.conjuncts[0] == ci.guard.conjuncts[1]);
}

TEST_CASE("homogenize examples") {
    Loop h = homogenize(corpus_loop("example1.loop"));
    CHECK(h.A == mat({{1, 0, 1}, {0, 2, 0}, {0, 0, 1}}));
    CHECK(h.b == vec({0, 0, 0}));
    CHECK(h.vars.size() == 3);
    Loop h1 = homogenize(parse_loop("vars x\nupdate x := 2*x + 3"));
    CHECK(h1.A == mat({{2, 3}, {0, 1}}));
    Loop h0 = homogenize(parse_loop("vars x, z\nupdate x := 2*x"));
    CHECK(h0.A.size() == 3);
    CHECK(h0.vars[2] != "z");
    CHECK(h0.vars[2] != "x");
}

TEST_CASE("round trip through the pretty printer") {
    std::mt19937_64 rng(11);
    for (const auto& f : corpus_files()) {
        CAPTURE(f);
        Loop l = parse_loop(read_file(f));
        CHECK(parse_loop(pretty_print(l)) == l);
    }
    for (int i = 0; i < 30; ++i) {
        Loop l = random_loop(rng, 1 + i % 3, false);
        l.guard.conjuncts.push_back(ineq({{"x", 2}}, -1, Rel::Gt));
        CHECK(parse_loop(pretty_print(l)) == l);
    }
}

TEST_CASE("chaining is two steps of the original loop") {
    std::mt19937_64 rng(7);
    std::vector<Loop> loops;
    for (const auto& f : corpus_files()) loops.push_back(parse_loop(read_file(f)));
    for (const auto& l : loops) {
        Loop c = chain(l);
        for (int k = 0; k < 20; ++k) {
            Vector v = random_vector(rng, l.dim());
            Vector once = apply_update(l, v);
            CHECK(apply_update(c, v) == apply_update(l, once));
            CHECK(c.guard.holds(c.vars, v) == (l.guard.holds(l.vars, v) && l.guard.holds(l.vars, once)));
        }
    }
}

TEST_CASE("homogenization preserves trajectories") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        Loop l = random_loop(rng, 1 + i % 3, false);
        Loop h = homogenize(l);
        Vector v = random_vector(rng, l.dim());
        Vector hv = v;
        hv.push_back(Rational(1));
        for (int step = 0; step < 10; ++step) {
            v = apply_update(l, v);
            hv = apply_update(h, hv);
            CHECK(Vector(hv.begin(), hv.end() - 1) == v);
            CHECK(hv.back() == Rational(1));
        }
    }
}

TEST_CASE("guard normalization preserves the meaning of comparisons") {
    std::mt19937_64 rng(9);
    struct Case {
        const char* text;
        bool (*raw)(const Rational& x, const Rational& y);
    };
    const Case cases[] = {
        {"x + 1 < 2*y", [](const Rational& x, const Rational& y) { return x + Rational(1) < Rational(2) * y; }},
        {"x - y <= 1/2", [](const Rational& x, const Rational& y) { return x - y <= Rational(1, 2); }},
        {"3 > x", [](const Rational& x, const Rational&) { return Rational(3) > x; }},
        {"-x >= y", [](const Rational& x, const Rational& y) { return -x >= y; }},
        {"x = y", [](const Rational& x, const Rational& y) { return x == y; }},
        {"y < x <= 2", [](const Rational& x, const Rational& y) { return y < x && x <= Rational(2); }},
    };
    for (const auto& c : cases) {
        CAPTURE(c.text);
        Loop l = parse_loop(std::string("vars x, y\nguard ") + c.text);
        for (int k = 0; k < 200; ++k) {
            Vector v{random_rational(rng, 4, 2), random_rational(rng, 4, 2)};
            if (k % 5 == 0) v[1] = v[0];
            CHECK(l.guard.holds(l.vars, v) == c.raw(v[0], v[1]));
        }
    }
}

TEST_CASE("substitute_update agrees with evaluating after one step") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 20; ++i) {
        Loop l = random_loop(rng, 1 + i % 3, i % 2 == 0);
        const LinearTerm& t = l.guard.conjuncts.front().term;
        LinearTerm s = substitute_update(t, l);
        Vector v = random_vector(rng, l.dim());
        CHECK(s.eval(l.vars, v) == t.eval(l.vars, apply_update(l, v)));
    }
}

TEST_CASE("validate rejects inconsistent loops") {
    Loop l = corpus_loop("example1.loop");
    l.b.pop_back();
    CHECK_THROWS_AS(l.validate(), std::invalid_argument);
    Loop m = corpus_loop("example1.loop");
    m.guard.conjuncts.push_back(ineq({{"q", 1}}, 0, Rel::Ge));
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}
