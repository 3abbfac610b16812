#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilred {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Syntax error in an algebra spec. Positions are 1-based.
struct ParseError : Error {
  ParseError(std::string msg, std::size_t line, std::size_t col)
      : Error(std::move(msg)), line(line), col(col) {}
  std::size_t line = 0, col = 0;
};

/// Semantic violation: bad dimensions, non-skew matrices, invalid parameters.
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace nilred
