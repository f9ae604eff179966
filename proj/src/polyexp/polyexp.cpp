#include "crloop/polyexp/polyexp.hpp"

#include <algorithm>
#include <stdexcept>

namespace crl {
namespace {

// Descending by base, then by exponent.
template <class A>
bool before(const A& x, const A& y) {
    auto c = x.base <=> y.base;
    if (c != 0) return c > 0;
    return x.exp > y.exp;
}

template <class A>
bool same_key(const A& x, const A& y) {
    return x.exp == y.exp && x.base == y.base;
}

std::string power_str(const RealAlgebraic& base, unsigned exp, const char* var) {
    std::string s;
    if (base != RealAlgebraic(1)) {
        std::string b = base.str();
        if (!base.is_rational() || !base.rational().is_integer()) b = "(" + b + ")";
        s = b + "^" + var;
    }
    if (exp > 0) {
        if (!s.empty()) s += "*";
        s += var;
        if (exp > 1) s += "^" + std::to_string(exp);
    }
    return s;
}

Rational binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rational(r);
}

}  // namespace

void AlgLinearForm::add(const std::string& name, const RealAlgebraic& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs.emplace(name, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
}

AlgLinearForm& AlgLinearForm::operator+=(const AlgLinearForm& o) {
    for (const auto& [v, c] : o.coeffs) add(v, c);
    constant += o.constant;
    return *this;
}

AlgLinearForm AlgLinearForm::scaled(const RealAlgebraic& s) const {
    AlgLinearForm r;
    if (s.is_zero()) return r;
    for (const auto& [v, c] : coeffs) r.coeffs.emplace(v, c * s);
    r.constant = constant * s;
    return r;
}

RealAlgebraic AlgLinearForm::eval(const std::vector<std::string>& vars, const Vector& v) const {
    RealAlgebraic r = constant;
    for (const auto& [name, c] : coeffs) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw std::invalid_argument("unknown variable '" + name + "'");
        r += c * RealAlgebraic(v[static_cast<std::size_t>(it - vars.begin())]);
    }
    return r;
}

std::string AlgLinearForm::str() const {
    std::string out;
    auto append = [&](const RealAlgebraic& c, const std::string& name) {
        bool neg = c.sign() < 0;
        RealAlgebraic mag = neg ? -c : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (name.empty())
            out += mag.str();
        else if (mag == RealAlgebraic(1))
            out += name;
        else
            out += mag.str() + "*" + name;
    };
    for (const auto& [name, c] : coeffs) append(c, name);
    if (!constant.is_zero() || out.empty()) append(constant, "");
    return out;
}

PolyExp PolyExp::normalize(std::vector<PolyExpAddend> raw) {
    for (const auto& a : raw)
        if (a.base.sign() <= 0) throw std::invalid_argument("poly-exponential base must be positive");
    std::stable_sort(raw.begin(), raw.end(), before<PolyExpAddend>);
    PolyExp out;
    for (auto& a : raw) {
        if (!out.addends_.empty() && same_key(out.addends_.back(), a))
            out.addends_.back().a += a.a;
        else
            out.addends_.push_back(std::move(a));
    }
    std::erase_if(out.addends_, [](const PolyExpAddend& a) { return a.a.is_zero(); });
    return out;
}

RealAlgebraic PolyExp::eval(const std::vector<std::string>& vars, const Vector& v, unsigned long n) const {
    RealAlgebraic r;
    for (const auto& a : addends_)
        r += a.a.eval(vars, v) * pow(a.base, n) * RealAlgebraic(pow(Rational(static_cast<long>(n)), a.exp));
    return r;
}

std::string PolyExp::str() const {
    if (addends_.empty()) return "0";
    std::string out;
    for (const auto& a : addends_) {
        if (!out.empty()) out += " + ";
        std::string p = power_str(a.base, a.exp, "n");
        if (p.empty())
            out += a.a.str();
        else if (a.a.coeffs.empty() && a.a.constant == RealAlgebraic(1))
            out += p;
        else
            out += "(" + a.a.str() + ")*" + p;
    }
    return out;
}

unsigned long rootbound(const PolyExp& t) {
    if (t.is_zero()) return 0;
    unsigned long r = t.addends().size() - 1;
    for (const auto& a : t.addends()) r += a.exp;
    return r;
}

Coeff Coeff::normalize(std::vector<CoeffAddend> raw) {
    for (const auto& a : raw)
        if (a.base.sign() <= 0) throw std::invalid_argument("poly-exponential base must be positive");
    std::stable_sort(raw.begin(), raw.end(), before<CoeffAddend>);
    Coeff out;
    for (auto& a : raw) {
        if (!out.addends_.empty() && same_key(out.addends_.back(), a))
            out.addends_.back().d += a.d;
        else
            out.addends_.push_back(std::move(a));
    }
    std::erase_if(out.addends_, [](const CoeffAddend& a) { return a.d.is_zero(); });
    return out;
}

Coeff Coeff::constant(const RealAlgebraic& c) {
    Coeff out;
    if (!c.is_zero()) out.addends_.push_back({c, RealAlgebraic(1), 0});
    return out;
}

bool Coeff::is_constant() const {
    return addends_.empty() || (addends_.size() == 1 && addends_[0].exp == 0 && addends_[0].base == RealAlgebraic(1));
}

Coeff Coeff::operator-() const {
    Coeff r = *this;
    for (auto& a : r.addends_) a.d = -a.d;
    return r;
}

Coeff operator+(const Coeff& a, const Coeff& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::vector<CoeffAddend> all = a.addends_;
    all.insert(all.end(), b.addends_.begin(), b.addends_.end());
    return Coeff::normalize(std::move(all));
}

Coeff operator*(const Coeff& a, const Coeff& b) {
    if (a.is_zero() || b.is_zero()) return Coeff();
    // scaling by a constant keeps the order and the keys
    if (a.is_constant() || b.is_constant()) {
        const Coeff& c = a.is_constant() ? a : b;
        Coeff r = a.is_constant() ? b : a;
        const RealAlgebraic& k = c.addends_[0].d;
        for (auto& x : r.addends_) x.d *= k;
        return r;
    }
    std::vector<CoeffAddend> all;
    all.reserve(a.addends_.size() * b.addends_.size());
    for (const auto& x : a.addends_)
        for (const auto& y : b.addends_) all.push_back({x.d * y.d, x.base * y.base, x.exp + y.exp});
    return Coeff::normalize(std::move(all));
}

bool operator==(const Coeff& a, const Coeff& b) {
    if (a.addends_.size() != b.addends_.size()) return false;
    for (std::size_t i = 0; i < a.addends_.size(); ++i) {
        const auto& x = a.addends_[i];
        const auto& y = b.addends_[i];
        if (x.exp != y.exp || x.base != y.base || x.d != y.d) return false;
    }
    return true;
}

std::string Coeff::str() const {
    if (addends_.empty()) return "0";
    std::string out;
    for (const auto& a : addends_) {
        bool neg = a.d.sign() < 0;
        RealAlgebraic mag = neg ? -a.d : a.d;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string p = power_str(a.base, a.exp, "m");
        if (p.empty())
            out += mag.str();
        else if (mag == RealAlgebraic(1))
            out += p;
        else
            out += mag.str() + "*" + p;
    }
    return out;
}

int esign(const Coeff& c) { return c.is_zero() ? 0 : c.addends().front().d.sign(); }

RealAlgebraic coeff_eval(const Coeff& c, unsigned long m) {
    RealAlgebraic r;
    for (const auto& a : c.addends())
        r += a.d * pow(a.base, m) * RealAlgebraic(pow(Rational(static_cast<long>(m)), a.exp));
    return r;
}

void SymLinear::add(const std::string& name, const Coeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs.emplace(name, c);
    if (inserted) return;
    it->second = it->second + c;
    if (it->second.is_zero()) coeffs.erase(it);
}

SymLinear substitute_n(const PolyExp& t, unsigned long n0, unsigned long j) {
    // a * b^(n0 + j m) * (n0 + j m)^e = a * b^n0 * sum_k C(e,k) n0^(e-k) j^k * (b^j)^m * m^k
    std::map<std::string, std::vector<CoeffAddend>> per_var;
    std::vector<CoeffAddend> constant;
    for (const auto& add : t.addends()) {
        RealAlgebraic scale = pow(add.base, n0);
        RealAlgebraic new_base = pow(add.base, j);
        for (unsigned k = 0; k <= add.exp; ++k) {
            Rational w = binomial(add.exp, k) * pow(Rational(static_cast<long>(n0)), add.exp - k) *
                         pow(Rational(static_cast<long>(j)), k);
            if (w.is_zero()) continue;
            RealAlgebraic f = scale * RealAlgebraic(w);
            for (const auto& [v, c] : add.a.coeffs) per_var[v].push_back({c * f, new_base, k});
            if (!add.a.constant.is_zero()) constant.push_back({add.a.constant * f, new_base, k});
        }
    }
    SymLinear out;
    for (auto& [v, raw] : per_var) out.add(v, Coeff::normalize(std::move(raw)));
    out.constant = Coeff::normalize(std::move(constant));
    return out;
}

std::string SymIneq::str() const {
    std::string out;
    for (const auto& [v, c] : lhs.coeffs) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + v;
    }
    if (!lhs.constant.is_zero() || out.empty()) {
        if (!out.empty()) out += " + ";
        out += "(" + lhs.constant.str() + ")";
    }
    return out + (rel == Rel::Gt ? " > 0" : " >= 0");
}

std::vector<Inequation> instantiate_m(const std::vector<SymIneq>& system, unsigned long m) {
    auto value = [m](const Coeff& c) {
        RealAlgebraic v = coeff_eval(c, m);
        if (!v.is_rational()) throw std::domain_error("instantiate_m: irrational coefficient");
        return v.rational();
    };
    std::vector<Inequation> out;
    for (const auto& q : system) {
        Inequation e;
        e.rel = q.rel;
        for (const auto& [v, c] : q.lhs.coeffs) e.term.add(v, value(c));
        e.term.constant = value(q.lhs.constant);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace crl
