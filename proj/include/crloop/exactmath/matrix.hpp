#pragma once

#include <cstddef>
#include <vector>

#include "crloop/exactmath/ratpoly.hpp"
#include "crloop/exactmath/rational.hpp"

namespace crl {

using Vector = std::vector<Rational>;
/// Row-major dense matrix.
using Matrix = std::vector<Vector>;

Matrix identity_matrix(std::size_t n);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);
Vector operator+(const Vector& a, const Vector& b);

std::size_t rank(Matrix m);

/// det(z*I - a) by Faddeev-LeVerrier.
RatPoly characteristic_polynomial(const Matrix& a);

}  // namespace crl
