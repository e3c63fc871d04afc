#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wts {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed symbol text.  Carries the byte offset of the first offending
// character so callers can point at it.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// Evaluation left the domain of a function (log of a non-positive value,
// division by zero, fractional power of a negative base, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// Invalid grid construction or two grids that do not match.
class GridError : public Error {
public:
  using Error::Error;
};

// Malformed input file (CSV / JSON / config).
class InputError : public Error {
public:
  using Error::Error;
};

}  // namespace wts
