#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "crloop/loop/loop.hpp"

namespace crl {

/// Syntax or semantic error in loop text; line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& what)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

/// Parses the loop language:
///
///   vars x, y
///   guard 0 <= x + y <= 10 && x > 1/2
///   update x := x + 1
///   update y := 2*y
///
/// Statements are separated by newlines or ';', '#' starts a comment.
/// Comparisons <, <=, >, >=, = (chains allowed) are normalized to
/// t > 0 / t >= 0. Several guard statements are conjoined; no guard means
/// true. Variables without an update keep their value.
Loop parse_loop(std::string_view text);

}  // namespace crl
