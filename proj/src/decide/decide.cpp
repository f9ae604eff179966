#include "crloop/decide/decide.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <map>
#include <set>
#include <unordered_map>

#include "crloop/errors.hpp"
#include "crloop/linsat/linsat.hpp"

namespace crl {
namespace {

std::size_t hash_alg(const RealAlgebraic& a) {
    if (a.is_rational()) return a.rational().hash();
    // Conjugates collide; equality is decided exactly afterwards.
    std::size_t h = 0x51ed;
    RatPoly m = a.minpoly();
    for (const auto& c : m.coeffs()) h = h * 1000003u ^ c.hash();
    return h;
}

std::size_t hash_coeff(const Coeff& c) {
    std::size_t h = 0;
    for (const auto& a : c.addends()) h = (h * 31 + hash_alg(a.d)) * 31 + hash_alg(a.base) + a.exp;
    return h;
}

std::size_t hash_ineq(const SymIneq& q) {
    std::size_t h = q.rel == Rel::Gt ? 1 : 2;
    for (const auto& [v, c] : q.lhs.coeffs) h = h * 131 + std::hash<std::string>{}(v) + hash_coeff(c);
    return h * 131 + hash_coeff(q.lhs.constant);
}

}  // namespace

Psi build_instantiated_guard(const Loop& loop, const ClosedForm& cf) {
    Psi psi;
    for (const auto& q : loop.guard.conjuncts) {
        std::vector<PolyExpAddend> raw;
        for (const auto& [name, c] : q.term.coeffs) {
            const PolyExp& t = cf.cl[loop.index_of(name)];
            for (const auto& add : t.addends()) raw.push_back({add.a.scaled(RealAlgebraic(c)), add.base, add.exp});
        }
        if (!q.term.constant.is_zero()) {
            PolyExpAddend k;
            k.a.constant = RealAlgebraic(q.term.constant);
            k.base = RealAlgebraic(1);
            raw.push_back(std::move(k));
        }
        psi.push_back({PolyExp::normalize(std::move(raw)), q.rel});
    }
    return psi;
}

unsigned long guard_rootbound(const Psi& psi) {
    unsigned long rb = 0;
    for (const auto& c : psi) rb += rootbound(c.t);
    return rb;
}

std::vector<SymIneq> build_pi(const Psi& psi, unsigned long rb, std::size_t n0) {
    std::vector<SymIneq> pi;
    for (unsigned long j = 0; j <= rb; ++j)
        for (const auto& c : psi) pi.push_back({substitute_n(c.t, n0, j), c.rel});
    return pi;
}

namespace {

// p1 * t2 - p2 * t1 for a lower bound l (coefficient p1 of x eventually
// positive) and an upper bound u (p2 eventually negative). With
// reduce=true and p1 = -p2 the common factor is dropped, giving t1 + t2;
// dividing by an eventually positive Coeff keeps the set of solutions for
// every large m.
SymIneq combine(const SymIneq& l, const SymIneq& u, const std::string& x, bool reduce) {
    const Coeff& p1 = l.lhs.coeffs.at(x);
    const Coeff& p2 = u.lhs.coeffs.at(x);
    SymIneq comb;
    comb.rel = (l.rel == Rel::Ge && u.rel == Rel::Ge) ? Rel::Ge : Rel::Gt;
    if (reduce && p1 == -p2) {
        comb.lhs = u.lhs;
        comb.lhs.coeffs.erase(x);
        for (const auto& [v, c] : l.lhs.coeffs)
            if (v != x) comb.lhs.add(v, c);
        comb.lhs.constant = comb.lhs.constant + l.lhs.constant;
        return comb;
    }
    for (const auto& [v, c] : u.lhs.coeffs)
        if (v != x) comb.lhs.add(v, p1 * c);
    Coeff neg_p2 = -p2;
    for (const auto& [v, c] : l.lhs.coeffs)
        if (v != x) comb.lhs.add(v, neg_p2 * c);
    comb.lhs.constant = p1 * u.lhs.constant + neg_p2 * l.lhs.constant;
    return comb;
}

}  // namespace

std::vector<SymIneq> fm_eliminate(const std::vector<SymIneq>& pi, const std::string& x) {
    std::vector<const SymIneq*> lower, upper;
    std::vector<SymIneq> out;
    for (const auto& q : pi) {
        auto it = q.lhs.coeffs.find(x);
        int s = it == q.lhs.coeffs.end() ? 0 : esign(it->second);
        if (s > 0)
            lower.push_back(&q);
        else if (s < 0)
            upper.push_back(&q);
        else
            out.push_back(q);
    }
    for (const SymIneq* l : lower)
        for (const SymIneq* u : upper) out.push_back(combine(*l, *u, x, false));
    return out;
}

std::vector<SymIneq> prune(std::vector<SymIneq> pi) {
    std::vector<SymIneq> out;
    std::unordered_multimap<std::size_t, std::size_t> seen;
    for (auto& q : pi) {
        if (q.is_ground()) {
            int s = esign(q.lhs.constant);
            if (s > 0 || (s == 0 && q.rel == Rel::Ge)) continue;
        }
        std::size_t h = hash_ineq(q);
        auto [b, e] = seen.equal_range(h);
        bool dup = std::any_of(b, e, [&](const auto& kv) { return out[kv.second] == q; });
        if (dup) continue;
        seen.emplace(h, out.size());
        out.push_back(std::move(q));
    }
    return out;
}

LargeM final_verdict(const std::vector<SymIneq>& ground) {
    for (const auto& q : ground) {
        if (!q.is_ground()) throw std::invalid_argument("final_verdict: system still mentions variables");
        int s = esign(q.lhs.constant);
        if (s < 0 || (s == 0 && q.rel == Rel::Gt)) return LargeM::Unsat;
    }
    return LargeM::Sat;
}

namespace {

// A conjunct together with the indices of the pi conjuncts it was derived
// from. After k eliminations, a conjunct derived from more than k + 1
// originals is a positive combination of retained ones (Chernikov), for
// every fixed m beyond sign stabilization, and can be dropped.
struct Tracked {
    SymIneq q;
    std::vector<std::uint32_t> history;
};

// Divides q by the absolute value of its leading rational coefficient so
// that positive multiples of one conjunct compare equal.
void scale_canonical(SymIneq& q) {
    const Coeff& first = q.lhs.coeffs.empty() ? q.lhs.constant : q.lhs.coeffs.begin()->second;
    if (first.is_zero()) return;
    const RealAlgebraic& d = first.addends().front().d;
    if (!d.is_rational()) return;
    Rational r = d.rational();
    if (r.sign() < 0) r = -r;
    if (r == Rational(1)) return;
    Coeff inv = Coeff::constant(RealAlgebraic(Rational(1) / r));
    for (auto& [v, c] : q.lhs.coeffs) c = c * inv;
    q.lhs.constant = q.lhs.constant * inv;
}

bool eventually_true(const SymIneq& q) {
    if (!q.is_ground()) return false;
    int s = esign(q.lhs.constant);
    return s > 0 || (s == 0 && q.rel == Rel::Ge);
}

std::size_t hash_coeffs(const SymLinear& l) {
    std::size_t h = 7;
    for (const auto& [v, c] : l.coeffs) h = h * 131 + std::hash<std::string>{}(v) + hash_coeff(c);
    return h;
}

// Collects conjuncts while keeping the system small: among conjuncts with
// the same variable coefficients only the eventually tightest one survives
// (smaller constant, strict on ties), eventually true ground conjuncts are
// dropped, and the first eventually false ground conjunct is recorded as a
// witness, after which everything else is ignored.
class Reducer {
public:
    // With track_histories, a conjunct only gives way to one whose history
    // is a subset of its own, so the history rule stays sound.
    Reducer(std::size_t max_conjuncts, std::optional<SymIneq>& witness, bool track_histories)
        : max_(max_conjuncts), witness_(witness), track_(track_histories) {}

    void add(Tracked t) {
        if (witness_) return;
        if (t.q.is_ground() && !eventually_true(t.q)) {
            witness_ = std::move(t.q);
            return;
        }
        if (eventually_true(t.q)) return;
        std::size_t h = hash_coeffs(t.q.lhs);
        auto [b, e] = seen_.equal_range(h);
        for (auto it = b; it != e; ++it) {
            Tracked& old = out_[it->second];
            if (old.q.lhs.coeffs != t.q.lhs.coeffs) continue;
            int d = esign(t.q.lhs.constant - old.q.lhs.constant);
            bool t_implies = d < 0 || (d == 0 && (t.q.rel == Rel::Gt || old.q.rel == Rel::Ge));
            bool old_implies = d > 0 || (d == 0 && (old.q.rel == Rel::Gt || t.q.rel == Rel::Ge));
            if (t_implies && (!old_implies || t.history.size() < old.history.size()) && covers(t, old)) {
                old = std::move(t);
                return;
            }
            if (old_implies && covers(old, t)) return;
        }
        seen_.emplace(h, out_.size());
        out_.push_back(std::move(t));
        if (out_.size() > max_)
            throw ResourceLimit("elimination exceeds " + std::to_string(max_) + " conjuncts");
    }

    bool done() const { return witness_.has_value(); }
    std::vector<Tracked> take() { return std::move(out_); }

private:
    bool covers(const Tracked& keep, const Tracked& drop) const {
        return !track_ || std::includes(drop.history.begin(), drop.history.end(), keep.history.begin(),
                                        keep.history.end());
    }

    std::size_t max_;
    std::optional<SymIneq>& witness_;
    bool track_;
    std::vector<Tracked> out_;
    std::unordered_multimap<std::size_t, std::size_t> seen_;
};

// Eliminates x, feeding every surviving conjunct through a Reducer.
std::vector<Tracked> eliminate_tracked(std::vector<Tracked>& pi, const std::string& x, std::size_t eliminated,
                                       bool use_history, std::size_t max_conjuncts,
                                       std::optional<SymIneq>& witness) {
    std::vector<std::size_t> lower, upper;
    Reducer keep(max_conjuncts, witness, use_history);
    for (std::size_t i = 0; i < pi.size(); ++i) {
        auto it = pi[i].q.lhs.coeffs.find(x);
        int s = it == pi[i].q.lhs.coeffs.end() ? 0 : esign(it->second);
        if (s > 0)
            lower.push_back(i);
        else if (s < 0)
            upper.push_back(i);
        else
            keep.add(std::move(pi[i]));
    }
    for (std::size_t li : lower)
        for (std::size_t ui : upper) {
            if (keep.done()) return {};
            const Tracked& l = pi[li];
            const Tracked& u = pi[ui];
            std::vector<std::uint32_t> hist;
            std::set_union(l.history.begin(), l.history.end(), u.history.begin(), u.history.end(),
                           std::back_inserter(hist));
            if (use_history && hist.size() > eliminated + 1) continue;
            SymIneq comb = combine(l.q, u.q, x, true);
            scale_canonical(comb);
            keep.add({std::move(comb), std::move(hist)});
        }
    return keep.take();
}

}  // namespace

Verdict decide(const Loop& loop, const DecideOptions& options) {
    loop.validate();
    if (!all_eigenvalues_real(loop)) throw UnsupportedLoop("non-real eigenvalues");
    Verdict verdict;
    Trace& tr = verdict.trace;
    tr.chained = has_negative_eigenvalue(loop);
    const Loop analyzed = tr.chained ? chain(loop) : loop;

    tr.closed_form = closed_form(analyzed);
    tr.n0 = tr.closed_form.n0;
    tr.psi = build_instantiated_guard(analyzed, tr.closed_form);
    tr.rb = guard_rootbound(tr.psi);
    std::vector<SymIneq> initial = prune(build_pi(tr.psi, tr.rb, tr.n0));
    tr.pi_size = initial.size();
    tr.peak_conjuncts = initial.size();

    std::optional<SymIneq> witness;
    std::vector<Tracked> pi;
    {
        Reducer keep(options.max_conjuncts, witness, false);
        for (std::uint32_t i = 0; i < initial.size(); ++i) {
            scale_canonical(initial[i]);
            keep.add({std::move(initial[i]), {i}});
        }
        pi = keep.take();
    }
    if (witness) pi.clear();
    std::vector<std::string> forced = options.elimination_order;
    while (!pi.empty()) {
        std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
        for (const auto& t : pi)
            for (const auto& [v, c] : t.q.lhs.coeffs) {
                auto& [lo, up] = counts[v];
                (esign(c) > 0 ? lo : up)++;
            }
        std::string x;
        while (!forced.empty() && x.empty()) {
            if (counts.count(forced.front())) x = forced.front();
            forced.erase(forced.begin());
        }
        if (x.empty()) {
            std::size_t best = 0;
            for (const auto& [v, lu] : counts) {  // map order gives the name tie-break
                std::size_t cost = lu.first * lu.second;
                if (x.empty() || cost < best) {
                    x = v;
                    best = cost;
                }
            }
        }
        tr.elimination_order.push_back(x);
        pi = eliminate_tracked(pi, x, tr.elimination_order.size(), options.history_pruning,
                               options.max_conjuncts, witness);
        tr.peak_conjuncts = std::max(tr.peak_conjuncts, pi.size());
    }
    // The reducer drops eventually true ground conjuncts and stops at the
    // first eventually false one, so at most that one is left.
    if (witness) tr.ground = {*witness};

    if (final_verdict(tr.ground) == LargeM::Unsat) {
        verdict.kind = VerdictKind::Constant;
        if (options.compute_bound) verdict.bound = compute_bound(loop, options.max_unroll);
    } else {
        verdict.kind = VerdictKind::NonConstant;
    }
    return verdict;
}

std::size_t compute_bound(const Loop& loop, std::size_t max_unroll) {
    auto unsat = [&](std::size_t c) { return !is_satisfiable(unroll_system(loop, c)); };
    if (unsat(0)) return 0;
    // Gallop to an unsatisfiable depth, then bisect (satisfiable at lo, unsatisfiable at hi).
    std::size_t lo = 0, hi = 1;
    while (!unsat(hi)) {
        lo = hi;
        if (hi >= max_unroll) throw ResourceLimit("unrolling exceeds " + std::to_string(max_unroll) + " steps");
        hi = std::min(max_unroll, 2 * hi + 1);
    }
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        (unsat(mid) ? hi : lo) = mid;
    }
    return hi;
}

SimulationResult simulate(const Loop& loop, Vector v, std::size_t max_steps) {
    SimulationResult r;
    while (r.steps < max_steps && loop.guard.holds(loop.vars, v)) {
        v = apply_update(loop, v);
        ++r.steps;
    }
    r.halted = !loop.guard.holds(loop.vars, v);
    return r;
}

std::optional<std::size_t> unroll_oracle(const Loop& loop, std::size_t k) {
    if (is_satisfiable(unroll_system(loop, k))) return std::nullopt;
    for (std::size_t c = 0; c <= k; ++c)
        if (!is_satisfiable(unroll_system(loop, c))) return c;
    return k;
}

}  // namespace crl
