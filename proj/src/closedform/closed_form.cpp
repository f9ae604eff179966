#include "crloop/closedform/closed_form.hpp"

#include <algorithm>
#include <stdexcept>

#include "crloop/errors.hpp"
#include "crloop/exactmath/factor.hpp"

namespace crl {

std::vector<Eigenvalue> spectrum(const Matrix& a) {
    RatPoly chi = characteristic_polynomial(a);
    std::vector<Eigenvalue> out;
    for (const auto& [f, mult] : factor(chi)) {
        auto roots = isolate_real_roots(f);
        if (roots.size() != static_cast<std::size_t>(f.degree())) throw UnsupportedLoop("non-real eigenvalues");
        for (auto& r : roots) out.push_back({std::move(r), mult});
    }
    std::sort(out.begin(), out.end(), [](const Eigenvalue& x, const Eigenvalue& y) { return x.lambda < y.lambda; });
    return out;
}

std::size_t nilpotency_index(const Matrix& a) {
    Matrix power = identity_matrix(a.size());
    std::size_t prev = rank(power);
    for (std::size_t k = 0;; ++k) {
        power = power * a;
        std::size_t next = rank(power);
        if (next == prev) return k;
        prev = next;
    }
}

namespace {

// Solves m * X = rhs in place by Gauss-Jordan elimination; m is square and
// invertible. Returns X.
std::vector<std::vector<RealAlgebraic>> solve(std::vector<std::vector<RealAlgebraic>> m,
                                              std::vector<std::vector<RealAlgebraic>> rhs) {
    const std::size_t n = m.size();
    const std::size_t k = rhs.empty() ? 0 : rhs[0].size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::logic_error("closed form: singular interpolation system");
        std::swap(m[piv], m[c]);
        std::swap(rhs[piv], rhs[c]);
        RealAlgebraic inv = m[c][c].reciprocal();
        for (std::size_t j = c; j < n; ++j) m[c][j] = m[c][j] * inv;
        for (std::size_t j = 0; j < k; ++j) rhs[c][j] = rhs[c][j] * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c].is_zero()) continue;
            RealAlgebraic f = m[i][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
            for (std::size_t j = 0; j < k; ++j)
                if (!rhs[c][j].is_zero()) rhs[i][j] -= f * rhs[c][j];
        }
    }
    return rhs;
}

}  // namespace

ClosedForm closed_form(const Loop& loop) {
    const std::size_t d = loop.dim();
    Loop h = homogenize(loop);
    const Matrix& a = h.A;

    struct Column {
        RealAlgebraic lambda;
        unsigned exp;
    };
    std::vector<Column> columns;
    for (const auto& ev : spectrum(a)) {
        if (ev.lambda.sign() < 0) throw UnsupportedLoop("negative eigenvalue in closed-form computation");
        if (ev.lambda.sign() == 0) continue;
        for (unsigned e = 0; e < ev.mult; ++e) columns.push_back({ev.lambda, e});
    }
    const std::size_t n0 = nilpotency_index(a);
    const std::size_t dd = columns.size();

    // Rows n0 .. n0+dd-1 of the sequence A^n.
    std::vector<Matrix> powers;
    Matrix p = identity_matrix(d + 1);
    for (std::size_t n = 0; n < n0 + dd; ++n) {
        if (n >= n0) powers.push_back(p);
        p = p * a;
    }

    std::vector<std::vector<RealAlgebraic>> vm(dd, std::vector<RealAlgebraic>(dd));
    std::vector<std::vector<RealAlgebraic>> rhs(dd, std::vector<RealAlgebraic>(d * (d + 1)));
    for (std::size_t r = 0; r < dd; ++r) {
        const unsigned long n = n0 + r;
        for (std::size_t c = 0; c < dd; ++c)
            vm[r][c] = pow(columns[c].lambda, n) * RealAlgebraic(pow(Rational(static_cast<long>(n)), columns[c].exp));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j <= d; ++j) rhs[r][i * (d + 1) + j] = RealAlgebraic(powers[r][i][j]);
    }
    auto coef = solve(std::move(vm), std::move(rhs));

    ClosedForm out;
    out.vars = loop.vars;
    out.n0 = n0;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<PolyExpAddend> raw;
        for (std::size_t c = 0; c < dd; ++c) {
            PolyExpAddend add;
            add.base = columns[c].lambda;
            add.exp = columns[c].exp;
            for (std::size_t j = 0; j < d; ++j) add.a.add(loop.vars[j], coef[c][i * (d + 1) + j]);
            // the homogenizing coordinate is pinned to 1
            add.a.constant = coef[c][i * (d + 1) + d];
            raw.push_back(std::move(add));
        }
        out.cl.push_back(PolyExp::normalize(std::move(raw)));
    }
    return out;
}

}  // namespace crl
