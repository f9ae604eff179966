#include "crloop/linsat/linsat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "crloop/errors.hpp"

namespace crl {
namespace {

// Scales t so that its first variable coefficient is +-1; equal keys mean
// the same half-space.
Inequation scaled_canonical(const Inequation& q) {
    Inequation r = q;
    if (!r.term.coeffs.empty()) r.term *= r.term.coeffs.begin()->second.abs().reciprocal();
    return r;
}

struct IneqLess {
    bool operator()(const Inequation& a, const Inequation& b) const {
        if (a.rel != b.rel) return a.rel < b.rel;
        if (a.term.constant != b.term.constant) return a.term.constant < b.term.constant;
        return std::lexicographical_compare(a.term.coeffs.begin(), a.term.coeffs.end(), b.term.coeffs.begin(),
                                            b.term.coeffs.end());
    }
};

bool constant_holds(const Inequation& q) {
    int s = q.term.constant.sign();
    return q.rel == Rel::Gt ? s > 0 : s >= 0;
}

// Dictionary form: basic[i] = h[i] - sum_j a[i][j] * nonbasic[j];
// objective = v + sum_j c[j] * nonbasic[j]. Variables are identified by
// integer ids; Bland's rule picks the smallest eligible id.
struct Dictionary {
    std::vector<int> basic, nonbasic;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> h, c;
    Rational v;

    void pivot(std::size_t l, std::size_t e) {
        const std::size_t n = nonbasic.size();
        Rational inv = a[l][e].reciprocal();
        h[l] *= inv;
        for (std::size_t j = 0; j < n; ++j)
            if (j != e) a[l][j] *= inv;
        a[l][e] = inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == l || a[i][e].is_zero()) continue;
            Rational f = a[i][e];
            h[i] -= f * h[l];
            for (std::size_t j = 0; j < n; ++j)
                if (j != e && !a[l][j].is_zero()) a[i][j] -= f * a[l][j];
            a[i][e] = -f * a[l][e];
        }
        if (!c[e].is_zero()) {
            Rational f = c[e];
            v += f * h[l];
            for (std::size_t j = 0; j < n; ++j)
                if (j != e && !a[l][j].is_zero()) c[j] -= f * a[l][j];
            c[e] = -f * a[l][e];
        }
        std::swap(basic[l], nonbasic[e]);
    }

    enum class Outcome { Optimal, Unbounded, Positive };

    // Maximizes the objective; with stop_when_positive, returns as soon as v > 0.
    Outcome optimize(bool stop_when_positive) {
        while (true) {
            if (stop_when_positive && v.sign() > 0) return Outcome::Positive;
            std::size_t e = nonbasic.size();
            for (std::size_t j = 0; j < nonbasic.size(); ++j)
                if (c[j].sign() > 0 && (e == nonbasic.size() || nonbasic[j] < nonbasic[e])) e = j;
            if (e == nonbasic.size()) return Outcome::Optimal;
            std::size_t l = a.size();
            Rational best;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i][e].sign() <= 0) continue;
                Rational ratio = h[i] / a[i][e];
                if (l == a.size() || ratio < best || (ratio == best && basic[i] < basic[l])) {
                    l = i;
                    best = ratio;
                }
            }
            if (l == a.size()) return Outcome::Unbounded;
            pivot(l, e);
        }
    }
};

}  // namespace

bool is_satisfiable(const std::vector<Inequation>& system) {
    // Deduplicate and settle variable-free conjuncts.
    std::set<Inequation, IneqLess> rows;
    for (const auto& q : system) {
        if (q.term.is_constant()) {
            if (!constant_holds(q)) return false;
            continue;
        }
        rows.insert(scaled_canonical(q));
    }
    if (rows.empty()) return true;

    std::map<std::string, int> var_index;
    for (const auto& q : rows)
        for (const auto& [name, _] : q.term.coeffs) var_index.emplace(name, 0);
    int next = 0;
    for (auto& [_, idx] : var_index) idx = next++;
    const int nvars = next;
    bool any_strict = std::any_of(rows.begin(), rows.end(), [](const Inequation& q) { return q.rel == Rel::Gt; });

    // Columns: x+ (0..nvars-1), x- (nvars..2nvars-1), then s if needed.
    const int ncols = 2 * nvars + (any_strict ? 1 : 0);
    const int s_col = 2 * nvars;
    Dictionary dict;
    for (int j = 0; j < ncols; ++j) dict.nonbasic.push_back(j);
    int slack_id = ncols;
    for (const auto& q : rows) {
        // t >= 0 (or > 0)  becomes  -sum a x (+ s) <= constant
        std::vector<Rational> row(static_cast<std::size_t>(ncols));
        for (const auto& [name, coef] : q.term.coeffs) {
            int k = var_index[name];
            row[static_cast<std::size_t>(k)] = -coef;
            row[static_cast<std::size_t>(nvars + k)] = coef;
        }
        if (q.rel == Rel::Gt) row[static_cast<std::size_t>(s_col)] = 1;
        dict.a.push_back(std::move(row));
        dict.h.push_back(q.term.constant);
        dict.basic.push_back(slack_id++);
    }
    if (any_strict) {
        std::vector<Rational> row(static_cast<std::size_t>(ncols));
        row[static_cast<std::size_t>(s_col)] = 1;
        dict.a.push_back(std::move(row));
        dict.h.push_back(Rational(1));
        dict.basic.push_back(slack_id++);
    }

    // Phase I with an auxiliary variable x0 (largest id, so Bland's rule
    // prefers the real variables).
    std::size_t worst = 0;
    for (std::size_t i = 1; i < dict.h.size(); ++i)
        if (dict.h[i] < dict.h[worst]) worst = i;
    if (dict.h[worst].sign() < 0) {
        const int x0 = slack_id;
        dict.nonbasic.push_back(x0);
        for (auto& row : dict.a) row.emplace_back(-1);
        dict.c.assign(dict.nonbasic.size(), Rational(0));
        dict.c.back() = -1;
        dict.v = 0;
        dict.pivot(worst, dict.nonbasic.size() - 1);
        dict.optimize(false);
        if (dict.v.sign() < 0) return false;
        // x0 = 0; move it out of the basis if needed, then drop its column.
        for (std::size_t i = 0; i < dict.basic.size(); ++i) {
            if (dict.basic[i] != x0) continue;
            std::size_t j = 0;
            while (j < dict.nonbasic.size() && dict.a[i][j].is_zero()) ++j;
            if (j < dict.nonbasic.size()) {
                dict.pivot(i, j);
            } else {
                // x0 = 0 identically in this row: the row carries no constraint.
                dict.basic.erase(dict.basic.begin() + static_cast<long>(i));
                dict.a.erase(dict.a.begin() + static_cast<long>(i));
                dict.h.erase(dict.h.begin() + static_cast<long>(i));
                dict.nonbasic.push_back(x0);
                for (auto& row : dict.a) row.emplace_back(0);
            }
            break;
        }
        auto it = std::find(dict.nonbasic.begin(), dict.nonbasic.end(), x0);
        std::size_t col = static_cast<std::size_t>(it - dict.nonbasic.begin());
        dict.nonbasic.erase(it);
        for (auto& row : dict.a) row.erase(row.begin() + static_cast<long>(col));
    }
    if (!any_strict) return true;

    // Phase II: maximize s.
    dict.c.assign(dict.nonbasic.size(), Rational(0));
    dict.v = 0;
    auto nb = std::find(dict.nonbasic.begin(), dict.nonbasic.end(), s_col);
    if (nb != dict.nonbasic.end()) {
        dict.c[static_cast<std::size_t>(nb - dict.nonbasic.begin())] = 1;
    } else {
        auto b = std::find(dict.basic.begin(), dict.basic.end(), s_col);
        std::size_t r = static_cast<std::size_t>(b - dict.basic.begin());
        dict.v = dict.h[r];
        for (std::size_t j = 0; j < dict.nonbasic.size(); ++j) dict.c[j] = -dict.a[r][j];
    }
    return dict.optimize(true) == Dictionary::Outcome::Positive || dict.v.sign() > 0;
}

bool fm_satisfiable(const std::vector<Inequation>& system, std::size_t max_conjuncts) {
    std::set<Inequation, IneqLess> cur;
    for (const auto& q : system) {
        if (q.term.is_constant()) {
            if (!constant_holds(q)) return false;
            continue;
        }
        cur.insert(scaled_canonical(q));
    }
    while (!cur.empty()) {
        // Pick the variable with the fewest generated combinations.
        std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
        for (const auto& q : cur)
            for (const auto& [name, c] : q.term.coeffs) {
                auto& [lo, up] = counts[name];
                (c.sign() > 0 ? lo : up)++;
            }
        std::string x;
        std::size_t best = 0;
        for (const auto& [name, lu] : counts) {
            std::size_t cost = lu.first * lu.second;
            if (x.empty() || cost < best) {
                x = name;
                best = cost;
            }
        }
        std::vector<Inequation> lower, upper;
        std::set<Inequation, IneqLess> next;
        for (const auto& q : cur) {
            Rational c = q.term.coeff(x);
            if (c.sign() > 0)
                lower.push_back(q);
            else if (c.sign() < 0)
                upper.push_back(q);
            else
                next.insert(q);
        }
        for (const auto& l : lower)
            for (const auto& u : upper) {
                Rational cl = l.term.coeff(x), cu = -u.term.coeff(x);
                Inequation comb{l.term * cu + u.term * cl, (l.rel == Rel::Ge && u.rel == Rel::Ge) ? Rel::Ge : Rel::Gt};
                if (comb.term.is_constant()) {
                    if (!constant_holds(comb)) return false;
                    continue;
                }
                next.insert(scaled_canonical(comb));
                if (next.size() > max_conjuncts) throw ResourceLimit("Fourier-Motzkin conjunct ceiling exceeded");
            }
        cur = std::move(next);
    }
    return true;
}

std::vector<Inequation> unroll_system(const Loop& loop, std::size_t c) {
    std::vector<Inequation> out;
    std::vector<Inequation> layer = loop.guard.conjuncts;
    for (std::size_t i = 0; i <= c; ++i) {
        out.insert(out.end(), layer.begin(), layer.end());
        if (i == c) break;
        for (auto& q : layer) q.term = substitute_update(q.term, loop);
    }
    return out;
}

}  // namespace crl
