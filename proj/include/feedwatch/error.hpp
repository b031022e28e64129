#pragma once

#include <stdexcept>
#include <string>

namespace feedwatch {

/// Base class for all feedwatch failures.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data; carries the 1-based line number when known.
struct ParseError : Error {
    ParseError(const std::string& msg, long line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
    long line;
};

/// An input vector/matrix does not have the expected dimensionality.
struct DimensionError : Error {
    using Error::Error;
};

}  // namespace feedwatch
