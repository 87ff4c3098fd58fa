#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace duo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct DegenerateError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct InvalidK : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct ZeroSingularValue : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct InvalidThreshold : Error { using Error::Error; };
struct InsufficientSamples : Error { using Error::Error; };
struct UnsupportedKind : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(std::size_t row, std::size_t col, const std::string& what)
      : Error(what), row(row), col(col) {}
  std::size_t row;  // 1-based line in the file
  std::size_t col;  // 1-based
};

}  // namespace duo
