#pragma once

#include <map>
#include <string>
#include <vector>

#include "crloop/exactmath/matrix.hpp"
#include "crloop/exactmath/rational.hpp"

namespace crl {

/// c_1*x_1 + ... + c_k*x_k + constant. Zero coefficients are never stored.
struct LinearTerm {
    std::map<std::string, Rational> coeffs;
    Rational constant;

    static LinearTerm var(const std::string& name) {
        LinearTerm t;
        t.coeffs.emplace(name, Rational(1));
        return t;
    }

    void add(const std::string& name, const Rational& c);
    Rational coeff(const std::string& name) const;
    bool is_constant() const { return coeffs.empty(); }

    LinearTerm operator-() const;
    LinearTerm& operator+=(const LinearTerm& o);
    LinearTerm& operator-=(const LinearTerm& o);
    LinearTerm& operator*=(const Rational& s);
    friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
    friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
    friend LinearTerm operator*(LinearTerm a, const Rational& s) { return a *= s; }
    friend bool operator==(const LinearTerm&, const LinearTerm&) = default;

    /// Value at v, where v[i] is the value of vars[i].
    Rational eval(const std::vector<std::string>& vars, const Vector& v) const;
    std::string str() const;
};

/// term > 0 (Gt) or term >= 0 (Ge).
enum class Rel { Gt, Ge };

struct Inequation {
    LinearTerm term;
    Rel rel = Rel::Ge;

    bool holds(const std::vector<std::string>& vars, const Vector& v) const;
    std::string str() const;
    friend bool operator==(const Inequation&, const Inequation&) = default;
};

struct Guard {
    std::vector<Inequation> conjuncts;

    bool holds(const std::vector<std::string>& vars, const Vector& v) const;
    friend bool operator==(const Guard&, const Guard&) = default;
};

/// while (guard) { x := A x + b }
struct Loop {
    std::vector<std::string> vars;
    Matrix A;
    Vector b;
    Guard guard;

    std::size_t dim() const { return vars.size(); }
    std::size_t index_of(const std::string& name) const;
    /// Throws std::invalid_argument when dimensions or variable names are inconsistent.
    void validate() const;
    friend bool operator==(const Loop&, const Loop&) = default;
};

Vector apply_update(const Loop& loop, const Vector& v);

/// t[x / A x + b]
LinearTerm substitute_update(const LinearTerm& t, const Loop& loop);

bool has_negative_eigenvalue(const Loop& loop);
bool all_eigenvalues_real(const Loop& loop);

/// Two-step composition: guard phi && phi[x / up(x)], update A^2 x + (A b + b).
Loop chain(const Loop& loop);

/// Appends a fresh variable pinned to 1 so the update becomes linear:
/// A' = [[A, b], [0, 1]], b' = 0. The fresh name is the last entry of vars.
Loop homogenize(const Loop& loop);

/// Renders the loop in the input language.
std::string pretty_print(const Loop& loop);

}  // namespace crl
