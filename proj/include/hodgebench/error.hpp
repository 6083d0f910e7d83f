#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hb {

/// Base class for all errors raised by the workbench.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or spec-file text. `offset` is 0-based within the
/// parsed string (or the line number for spec files).
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Operands that live on different charts or have incompatible shapes.
class ChartMismatch : public Error {
public:
  using Error::Error;
};

/// A precondition of a mathematical operation does not hold.
class DomainError : public Error {
public:
  using Error::Error;
};

}  // namespace hb
