#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modalagg {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid argument values: bad moduli, mismatched moduli, violated preconditions.
class ParameterError : public Error {
public:
  using Error::Error;
};

// Malformed input text or document; for formula text, carries the byte
// offset of the offending character.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what), position_(0) {}
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// Formula is well-formed but outside the agenda family of the frame kind.
class AgendaError : public Error {
public:
  using Error::Error;
};

// Operation requires a consistent judgment pair and got an inconsistent one.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

// Brute-force guard tripped: the requested enumeration is too large.
class ResourceError : public Error {
public:
  using Error::Error;
};

}  // namespace modalagg
