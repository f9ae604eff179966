#include "crloop/exactmath/matrix.hpp"

#include <stdexcept>

namespace crl {

Matrix identity_matrix(std::size_t n) {
    Matrix m(n, Vector(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Matrix r(n, Vector(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

Vector operator*(const Matrix& a, const Vector& v) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!a[i][j].is_zero()) r[i] += a[i][j] * v[j];
    return r;
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

std::size_t rank(Matrix m) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c].is_zero()) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

RatPoly characteristic_polynomial(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix mk(n, Vector(n));  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix next = a * mk;
        for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
        Matrix am = a * next;
        Rational tr;
        for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
        c[n - k] = -tr / Rational(static_cast<long>(k));
        mk = std::move(next);
    }
    return RatPoly(c);
}

}  // namespace crl
