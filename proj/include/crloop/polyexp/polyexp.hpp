#pragma once

#include <map>
#include <string>
#include <vector>

#include "crloop/exactmath/matrix.hpp"
#include "crloop/exactmath/real_algebraic.hpp"
#include "crloop/loop/loop.hpp"

namespace crl {

/// Linear form over the loop variables with algebraic coefficients.
struct AlgLinearForm {
    std::map<std::string, RealAlgebraic> coeffs;  // no zero entries
    RealAlgebraic constant;

    void add(const std::string& name, const RealAlgebraic& c);
    bool is_zero() const { return coeffs.empty() && constant.is_zero(); }
    AlgLinearForm& operator+=(const AlgLinearForm& o);
    AlgLinearForm scaled(const RealAlgebraic& s) const;
    RealAlgebraic eval(const std::vector<std::string>& vars, const Vector& v) const;
    std::string str() const;
};

/// a(x) * base^n * n^exp
struct PolyExpAddend {
    AlgLinearForm a;
    RealAlgebraic base;
    unsigned exp = 0;
};

/// Sum of addends with positive bases, pairwise distinct (base, exp) and
/// nonzero linear forms, ordered by (base, exp) descending.
class PolyExp {
public:
    PolyExp() = default;
    /// Merges equal (base, exp) pairs and drops zero forms. Throws
    /// std::invalid_argument for a non-positive base.
    static PolyExp normalize(std::vector<PolyExpAddend> raw);

    const std::vector<PolyExpAddend>& addends() const { return addends_; }
    bool is_zero() const { return addends_.empty(); }

    RealAlgebraic eval(const std::vector<std::string>& vars, const Vector& v, unsigned long n) const;
    std::string str() const;

private:
    std::vector<PolyExpAddend> addends_;
};

/// Number of addends minus one plus the sum of exponents (0 for zero).
unsigned long rootbound(const PolyExp& t);

/// d * base^m * m^exp
struct CoeffAddend {
    RealAlgebraic d;
    RealAlgebraic base;
    unsigned exp = 0;
};

/// Univariate poly-exponential in m; the empty sum is zero. Addends have
/// nonzero d, positive base, distinct (base, exp), ordered descending.
class Coeff {
public:
    Coeff() = default;
    static Coeff normalize(std::vector<CoeffAddend> raw);
    static Coeff constant(const RealAlgebraic& c);

    const std::vector<CoeffAddend>& addends() const { return addends_; }
    bool is_zero() const { return addends_.empty(); }
    /// True when the value does not depend on m.
    bool is_constant() const;

    Coeff operator-() const;
    friend Coeff operator+(const Coeff& a, const Coeff& b);
    friend Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }
    friend Coeff operator*(const Coeff& a, const Coeff& b);
    friend bool operator==(const Coeff& a, const Coeff& b);

    std::string str() const;

private:
    std::vector<CoeffAddend> addends_;
};

/// Sign of the coefficient for all sufficiently large m.
int esign(const Coeff& c);
RealAlgebraic coeff_eval(const Coeff& c, unsigned long m);

/// Linear form over the loop variables with Coeff coefficients.
struct SymLinear {
    std::map<std::string, Coeff> coeffs;  // no zero entries
    Coeff constant;

    void add(const std::string& name, const Coeff& c);
    friend bool operator==(const SymLinear&, const SymLinear&) = default;
};

/// t[n / n0 + j*m]
SymLinear substitute_n(const PolyExp& t, unsigned long n0, unsigned long j);

/// coeffs . x + constant (rel) 0 with coefficients depending on m.
struct SymIneq {
    SymLinear lhs;
    Rel rel = Rel::Ge;

    bool is_ground() const { return lhs.coeffs.empty(); }
    std::string str() const;
    friend bool operator==(const SymIneq&, const SymIneq&) = default;
};

/// Linear system obtained by fixing m; coefficients are rational only when
/// every base and d is rational (throws std::domain_error otherwise).
std::vector<Inequation> instantiate_m(const std::vector<SymIneq>& system, unsigned long m);

}  // namespace crl
