#pragma once

#include <stdexcept>
#include <string>

namespace crl {

/// The loop is outside the supported class (e.g. non-real eigenvalues).
class UnsupportedLoop : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured ceiling (conjunct count, unroll depth) was exceeded.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace crl
