#include "crloop/loop/loop.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "crloop/exactmath/ratpoly.hpp"

namespace crl {

void LinearTerm::add(const std::string& name, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs.emplace(name, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
}

Rational LinearTerm::coeff(const std::string& name) const {
    auto it = coeffs.find(name);
    return it == coeffs.end() ? Rational(0) : it->second;
}

LinearTerm LinearTerm::operator-() const {
    LinearTerm r = *this;
    for (auto& [_, c] : r.coeffs) c = -c;
    r.constant = -r.constant;
    return r;
}

LinearTerm& LinearTerm::operator+=(const LinearTerm& o) {
    for (const auto& [v, c] : o.coeffs) add(v, c);
    constant += o.constant;
    return *this;
}

LinearTerm& LinearTerm::operator-=(const LinearTerm& o) { return *this += -o; }

LinearTerm& LinearTerm::operator*=(const Rational& s) {
    if (s.is_zero()) {
        coeffs.clear();
        constant = 0;
        return *this;
    }
    for (auto& [_, c] : coeffs) c *= s;
    constant *= s;
    return *this;
}

Rational LinearTerm::eval(const std::vector<std::string>& vars, const Vector& v) const {
    Rational r = constant;
    for (const auto& [name, c] : coeffs) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw std::invalid_argument("unknown variable '" + name + "'");
        r += c * v[static_cast<std::size_t>(it - vars.begin())];
    }
    return r;
}

std::string LinearTerm::str() const {
    std::string out;
    auto append = [&](const Rational& c, const std::string& name) {
        Rational mag = c.abs();
        if (out.empty())
            out += c.sign() < 0 ? "-" : "";
        else
            out += c.sign() < 0 ? " - " : " + ";
        if (name.empty())
            out += mag.str();
        else if (mag == Rational(1))
            out += name;
        else
            out += mag.str() + "*" + name;
    };
    for (const auto& [name, c] : coeffs) append(c, name);
    if (!constant.is_zero() || out.empty()) append(constant, "");
    return out;
}

bool Inequation::holds(const std::vector<std::string>& vars, const Vector& v) const {
    int s = term.eval(vars, v).sign();
    return rel == Rel::Gt ? s > 0 : s >= 0;
}

std::string Inequation::str() const { return term.str() + (rel == Rel::Gt ? " > 0" : " >= 0"); }

bool Guard::holds(const std::vector<std::string>& vars, const Vector& v) const {
    return std::all_of(conjuncts.begin(), conjuncts.end(), [&](const Inequation& q) { return q.holds(vars, v); });
}

std::size_t Loop::index_of(const std::string& name) const {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw std::invalid_argument("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - vars.begin());
}

void Loop::validate() const {
    const std::size_t d = dim();
    if (d == 0) throw std::invalid_argument("loop has no variables");
    if (A.size() != d || b.size() != d) throw std::invalid_argument("update dimension mismatch");
    for (const auto& row : A)
        if (row.size() != d) throw std::invalid_argument("update matrix is not square");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (vars[i] == vars[j]) throw std::invalid_argument("duplicate variable '" + vars[i] + "'");
    for (const auto& q : guard.conjuncts)
        for (const auto& [name, _] : q.term.coeffs) index_of(name);
}

Vector apply_update(const Loop& loop, const Vector& v) {
    if (v.size() != loop.dim()) throw std::invalid_argument("apply_update: wrong vector size");
    return loop.A * v + loop.b;
}

LinearTerm substitute_update(const LinearTerm& t, const Loop& loop) {
    LinearTerm r;
    r.constant = t.constant;
    for (const auto& [name, c] : t.coeffs) {
        std::size_t i = loop.index_of(name);
        for (std::size_t j = 0; j < loop.dim(); ++j) r.add(loop.vars[j], c * loop.A[i][j]);
        r.constant += c * loop.b[i];
    }
    return r;
}

bool has_negative_eigenvalue(const Loop& loop) {
    RatPoly chi = characteristic_polynomial(loop.A);
    // Roots in (-inf, 0): count (-inf, 0] minus a possible root at 0.
    std::size_t upto_zero = sturm_count(chi, std::nullopt, Rational(0));
    if (chi.eval(Rational(0)).is_zero()) --upto_zero;
    return upto_zero > 0;
}

bool all_eigenvalues_real(const Loop& loop) {
    RatPoly chi = characteristic_polynomial(loop.A);
    for (const auto& [f, _] : squarefree_decomposition(chi))
        if (sturm_count(f, std::nullopt, std::nullopt) != static_cast<std::size_t>(f.degree())) return false;
    return true;
}

Loop chain(const Loop& loop) {
    Loop r = loop;
    for (const auto& q : loop.guard.conjuncts) r.guard.conjuncts.push_back({substitute_update(q.term, loop), q.rel});
    r.A = loop.A * loop.A;
    r.b = loop.A * loop.b + loop.b;
    return r;
}

Loop homogenize(const Loop& loop) {
    std::string fresh = "z";
    for (int k = 1; std::find(loop.vars.begin(), loop.vars.end(), fresh) != loop.vars.end(); ++k)
        fresh = "z" + std::to_string(k);
    const std::size_t d = loop.dim();
    Loop r;
    r.vars = loop.vars;
    r.vars.push_back(fresh);
    r.A.assign(d + 1, Vector(d + 1));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) r.A[i][j] = loop.A[i][j];
        r.A[i][d] = loop.b[i];
    }
    r.A[d][d] = 1;
    r.b.assign(d + 1, Rational(0));
    r.guard = loop.guard;
    return r;
}

std::string pretty_print(const Loop& loop) {
    std::ostringstream os;
    os << "vars ";
    for (std::size_t i = 0; i < loop.dim(); ++i) os << (i ? ", " : "") << loop.vars[i];
    os << "\n";
    if (!loop.guard.conjuncts.empty()) {
        os << "guard ";
        for (std::size_t i = 0; i < loop.guard.conjuncts.size(); ++i)
            os << (i ? " && " : "") << loop.guard.conjuncts[i].str();
        os << "\n";
    }
    for (std::size_t i = 0; i < loop.dim(); ++i) {
        LinearTerm t;
        for (std::size_t j = 0; j < loop.dim(); ++j) t.add(loop.vars[j], loop.A[i][j]);
        t.constant = loop.b[i];
        os << "update " << loop.vars[i] << " := " << t.str() << "\n";
    }
    return os.str();
}

}  // namespace crl
