#include "crloop/exactmath/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace crl {
namespace {

using u64 = std::uint64_t;

// ---------------------------------------------------------------------------
// Polynomials over F_p, p < 2^31, coefficients low to high, trimmed.

using ModPoly = std::vector<u64>;

struct Fp {
    u64 p;
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 mul(u64 a, u64 b) const { return (a * b) % p; }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const {
        if (a == 0) throw std::domain_error("F_p: inverse of zero");
        return pow(a, p - 2);
    }
};

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly mp_sub(const Fp& F, ModPoly a, const ModPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    trim(a);
    return a;
}

ModPoly mp_mul(const Fp& F, const ModPoly& a, const ModPoly& b) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
    }
    trim(r);
    return r;
}

ModPoly mp_scale(const Fp& F, ModPoly a, u64 s) {
    for (auto& c : a) c = F.mul(c, s);
    trim(a);
    return a;
}

// a = q*b + r
void mp_divmod(const Fp& F, ModPoly a, const ModPoly& b, ModPoly* q, ModPoly& r) {
    if (b.empty()) throw std::domain_error("F_p: division by zero polynomial");
    const int db = deg(b);
    u64 inv = F.inv(b.back());
    if (deg(a) < db) {
        if (q) q->clear();
        r = std::move(a);
        return;
    }
    ModPoly quo(a.size() - b.size() + 1, 0);
    for (int k = deg(a) - db; k >= 0; --k) {
        u64 f = F.mul(a[k + db], inv);
        quo[k] = f;
        if (!f) continue;
        for (int j = 0; j <= db; ++j) a[k + j] = F.sub(a[k + j], F.mul(f, b[j]));
    }
    a.resize(db);
    trim(a);
    trim(quo);
    if (q) *q = std::move(quo);
    r = std::move(a);
}

ModPoly mp_mod(const Fp& F, const ModPoly& a, const ModPoly& b) {
    ModPoly r;
    mp_divmod(F, a, b, nullptr, r);
    return r;
}

ModPoly mp_div(const Fp& F, const ModPoly& a, const ModPoly& b) {
    ModPoly q, r;
    mp_divmod(F, a, b, &q, r);
    return q;
}

ModPoly mp_monic(const Fp& F, const ModPoly& a) {
    if (a.empty()) return a;
    return mp_scale(F, a, F.inv(a.back()));
}

ModPoly mp_gcd(const Fp& F, ModPoly a, ModPoly b) {
    while (!b.empty()) {
        ModPoly r = mp_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(F, a);
}

ModPoly mp_derivative(const Fp& F, const ModPoly& a) {
    if (a.size() <= 1) return {};
    ModPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
    trim(r);
    return r;
}

ModPoly mp_powmod(const Fp& F, const ModPoly& base, const mpz_class& e, const ModPoly& m) {
    ModPoly result = mp_mod(F, ModPoly{1}, m);
    ModPoly b = mp_mod(F, base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mp_mod(F, mp_mul(F, result, result), m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mp_mod(F, mp_mul(F, result, b), m);
    }
    return result;
}

// s*a + t*b = 1 for coprime a, b.
void mp_xgcd(const Fp& F, const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t) {
    ModPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    while (!r1.empty()) {
        ModPoly q, r;
        mp_divmod(F, r0, r1, &q, r);
        ModPoly s2 = mp_sub(F, s0, mp_mul(F, q, s1));
        ModPoly t2 = mp_sub(F, t0, mp_mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (deg(r0) != 0) throw std::logic_error("mp_xgcd: inputs not coprime");
    u64 inv = F.inv(r0[0]);
    s = mp_scale(F, s0, inv);
    t = mp_scale(F, t0, inv);
}

// Distinct-degree factorization of a monic square-free polynomial.
std::vector<std::pair<ModPoly, int>> distinct_degree(const Fp& F, ModPoly f) {
    std::vector<std::pair<ModPoly, int>> out;
    const ModPoly x{0, 1};
    ModPoly h = x;
    const mpz_class p(static_cast<unsigned long>(F.p));
    int d = 0;
    while (deg(f) >= 2 * (d + 1)) {
        ++d;
        h = mp_powmod(F, h, p, f);
        ModPoly g = mp_gcd(F, f, mp_sub(F, h, x));
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = mp_div(F, f, g);
            h = mp_mod(F, h, f);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
}

// Cantor-Zassenhaus equal-degree splitting (odd p).
void equal_degree(const Fp& F, const ModPoly& f, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    if (deg(f) == d) {
        out.push_back(f);
        return;
    }
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<u64> coeff(0, F.p - 1);
    while (true) {
        ModPoly a(static_cast<std::size_t>(deg(f)));
        for (auto& c : a) c = coeff(rng);
        trim(a);
        if (deg(a) < 1) continue;
        ModPoly b = mp_powmod(F, a, e, f);
        b = mp_sub(F, b, ModPoly{1});
        ModPoly g = mp_gcd(F, f, b);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            equal_degree(F, g, d, rng, out);
            equal_degree(F, mp_div(F, f, g), d, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Integer polynomials and arithmetic modulo M = p^k.

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmod(ZPoly a, const mpz_class& m) {
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
    ztrim(a);
    return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    ztrim(r);
    return r;
}

ZPoly zadd(ZPoly a, const ZPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    ztrim(a);
    return a;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    ztrim(a);
    return a;
}

// Division by a monic polynomial modulo m.
void zdivmod_monic(ZPoly a, const ZPoly& b, const mpz_class& m, ZPoly& q, ZPoly& r) {
    a = zmod(std::move(a), m);
    const int db = zdeg(b);
    if (zdeg(a) < db) {
        q.clear();
        r = std::move(a);
        return;
    }
    ZPoly quo(a.size() - b.size() + 1, 0);
    for (int k = zdeg(a) - db; k >= 0; --k) {
        mpz_class f = a[k + db];
        mpz_fdiv_r(f.get_mpz_t(), f.get_mpz_t(), m.get_mpz_t());
        quo[k] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) a[k + j] -= f * b[j];
    }
    a.resize(db);
    q = zmod(std::move(quo), m);
    r = zmod(std::move(a), m);
}

ModPoly to_mod(const ZPoly& a, u64 p) {
    ModPoly r(a.size());
    mpz_class t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_fdiv_r_ui(t.get_mpz_t(), a[i].get_mpz_t(), p);
        r[i] = t.get_ui();
    }
    trim(r);
    return r;
}

ZPoly from_mod(const ModPoly& a) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
    return r;
}

mpz_class symmod(const mpz_class& x, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;
    return r;
}

// One quadratic Hensel step: lifts f = g*h, s*g + t*h = 1 from modulus m to m2 (m2 | m^2).
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const mpz_class& m2) {
    ZPoly e = zmod(zsub(f, zmul(g, h)), m2);
    ZPoly q, r;
    zdivmod_monic(zmul(s, e), h, m2, q, r);
    ZPoly g2 = zmod(zadd(zadd(g, zmul(t, e)), zmul(q, g)), m2);
    ZPoly h2 = zmod(zadd(h, r), m2);
    ZPoly b = zmod(zsub(zadd(zmul(s, g2), zmul(t, h2)), ZPoly{1}), m2);
    ZPoly c, d;
    zdivmod_monic(zmul(s, b), h2, m2, c, d);
    s = zmod(zsub(s, d), m2);
    t = zmod(zsub(zsub(t, zmul(t, b)), zmul(c, g2)), m2);
    g = std::move(g2);
    h = std::move(h2);
}

// Lifts the monic modular factors of f (product equals f / lc(f) mod p)
// to monic factors modulo pk.
void lift_tree(const ZPoly& f, const std::vector<ModPoly>& fs, const Fp& F, const mpz_class& pk,
               std::vector<ZPoly>& out) {
    if (fs.size() == 1) {
        mpz_class lc = f.back(), inv;
        if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t()) == 0)
            throw std::logic_error("hensel: leading coefficient not invertible");
        ZPoly r = f;
        for (auto& c : r) c *= inv;
        out.push_back(zmod(std::move(r), pk));
        return;
    }
    const std::size_t half = fs.size() / 2;
    std::vector<ModPoly> left(fs.begin(), fs.begin() + static_cast<long>(half));
    std::vector<ModPoly> right(fs.begin() + static_cast<long>(half), fs.end());
    ModPoly g0{to_mod(ZPoly{f.back()}, F.p)};
    for (const auto& u : left) g0 = mp_mul(F, g0, u);
    ModPoly h0{1};
    for (const auto& u : right) h0 = mp_mul(F, h0, u);
    ModPoly s0, t0;
    mp_xgcd(F, g0, h0, s0, t0);

    ZPoly g = from_mod(g0), h = from_mod(h0), s = from_mod(s0), t = from_mod(t0);
    mpz_class m = static_cast<unsigned long>(F.p);
    while (m < pk) {
        mpz_class m2 = m * m;
        if (m2 > pk) m2 = pk;
        hensel_step(zmod(f, m2), g, h, s, t, m2);
        m = m2;
    }
    lift_tree(g, left, F, pk, out);
    lift_tree(h, right, F, pk, out);
}

ZPoly primitive_part(ZPoly a) {
    mpz_class g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

// Exact division over Z; returns false when b does not divide a.
bool zdivides(const ZPoly& b, const ZPoly& a, ZPoly& quotient) {
    if (zdeg(a) < zdeg(b)) return false;
    ZPoly rem = a;
    const int db = zdeg(b);
    ZPoly quo(a.size() - b.size() + 1, 0);
    for (int k = zdeg(a) - db; k >= 0; --k) {
        const mpz_class& top = rem[k + db];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return false;
        mpz_class f;
        mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), b.back().get_mpz_t());
        quo[k] = f;
        for (int j = 0; j <= db; ++j) rem[k + j] -= f * b[j];
    }
    for (int i = 0; i < db; ++i)
        if (rem[i] != 0) return false;
    ztrim(quo);
    quotient = std::move(quo);
    return true;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Enumerates k-subsets of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<ZPoly> recombine(ZPoly f, std::vector<ZPoly> lifted, const mpz_class& pk) {
    std::vector<ZPoly> result;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        do {
            const mpz_class& a = f.back();
            if (f[0] != 0) {
                mpz_class c0 = a;
                for (auto i : idx) c0 = (c0 * lifted[i][0]) % pk;
                c0 = symmod(c0, pk);
                if (c0 == 0 || !mpz_divisible_p(mpz_class(a * f[0]).get_mpz_t(), c0.get_mpz_t())) continue;
            }
            ZPoly g{a};
            for (auto i : idx) g = zmod(zmul(g, lifted[i]), pk);
            for (auto& c : g) c = symmod(c, pk);
            ztrim(g);
            ZPoly G = primitive_part(g);
            ZPoly quotient;
            if (zdeg(G) > 0 && zdivides(G, f, quotient)) {
                result.push_back(G);
                f = primitive_part(std::move(quotient));
                std::vector<ZPoly> rest;
                for (std::size_t i = 0, k = 0; i < lifted.size(); ++i) {
                    if (k < idx.size() && idx[k] == i) {
                        ++k;
                        continue;
                    }
                    rest.push_back(std::move(lifted[i]));
                }
                lifted = std::move(rest);
                found = true;
                break;
            }
        } while (next_combination(idx, lifted.size()));
        if (!found) ++s;
    }
    if (zdeg(f) > 0) result.push_back(primitive_part(std::move(f)));
    return result;
}

ZPoly to_zpoly(const RatPoly& p) {
    RatPoly prim = p.primitive();
    ZPoly z(prim.coeffs().size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = prim.coeffs()[i].num();
    return z;
}

RatPoly to_ratpoly(const ZPoly& z) {
    std::vector<Rational> c(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) c[i] = Rational(z[i]);
    return RatPoly(std::move(c));
}

std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    const int n = zdeg(f);
    if (n <= 1) return {f};

    // Pick, among a few admissible primes, the one with the fewest modular factors.
    constexpr int kCandidates = 8;
    u64 best_p = 0;
    std::vector<std::pair<ModPoly, int>> best_ddf;
    std::size_t best_count = 0;
    int found = 0;
    for (u64 cand = 1048583; found < kCandidates; cand += 2) {
        if (!is_prime(cand)) continue;
        Fp F{cand};
        ModPoly fm = to_mod(f, cand);
        if (deg(fm) != n) continue;
        if (deg(mp_gcd(F, fm, mp_derivative(F, fm))) != 0) continue;
        ++found;
        auto dd = distinct_degree(F, mp_monic(F, fm));
        std::size_t count = 0;
        for (const auto& [g, d] : dd) count += static_cast<std::size_t>(deg(g) / d);
        if (best_p == 0 || count < best_count) {
            best_p = cand;
            best_ddf = std::move(dd);
            best_count = count;
        }
        if (best_count <= 2) break;
    }
    if (best_count == 1) return {f};

    Fp F{best_p};
    std::mt19937_64 rng(0x5eed);
    std::vector<ModPoly> modular;
    for (const auto& [g, d] : best_ddf) equal_degree(F, g, d, rng, modular);

    // Coefficient bound for factors (Landau-Mignotte) times |lc|, doubled for the symmetric range.
    mpz_class norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    mpz_class norm;
    mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
    norm += 1;
    mpz_class bound = 2 * abs(f.back()) * norm;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_class pk = static_cast<unsigned long>(best_p);
    while (pk <= bound) pk *= static_cast<unsigned long>(best_p);

    std::vector<ZPoly> lifted;
    lift_tree(f, modular, F, pk, lifted);
    return recombine(f, std::move(lifted), pk);
}

}  // namespace

std::vector<RatPoly> irreducible_factors(const RatPoly& squarefree) {
    if (squarefree.degree() <= 0) return {};
    ZPoly f = to_zpoly(squarefree);
    std::vector<RatPoly> out;
    // Pull out the factor z first; keeps the constant-term filter in recombination useful.
    if (f[0] == 0) {
        out.push_back(RatPoly({Rational(0), Rational(1)}));
        f.erase(f.begin());
        if (zdeg(f) <= 0) return out;
    }
    for (auto& g : zassenhaus(f)) out.push_back(to_ratpoly(g));
    std::sort(out.begin(), out.end(), [](const RatPoly& a, const RatPoly& b) { return a.degree() < b.degree(); });
    return out;
}

std::vector<std::pair<RatPoly, unsigned>> factor(const RatPoly& p) {
    std::vector<std::pair<RatPoly, unsigned>> out;
    for (const auto& [part, mult] : squarefree_decomposition(p))
        for (auto& g : irreducible_factors(part)) out.emplace_back(std::move(g), mult);
    return out;
}

}  // namespace crl
