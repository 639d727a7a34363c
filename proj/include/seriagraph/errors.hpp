#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seriagraph {

/// The input matrix violates an AssemblageMatrix invariant.
class InstanceInvalid : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Single-group enumeration declined because n exceeds the enumeration gate.
class FeasibilityRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact multigroup search declined because the partition space is too large.
class ScaleRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input table. row/column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : std::runtime_error(what), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

} // namespace seriagraph
