#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mekler {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: dimension mismatches, bad vertex sets, non-prime p.
class InputError : public Error {
 public:
  using Error::Error;
};

// Operation applied outside its domain, e.g. the handle of an element that
// is not of type p.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A search or enumeration would exceed its configured bound.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::string required)
      : Error(what + " (required cap: " + required + ")"),
        required_(std::move(required)) {}
  const std::string& required() const { return required_; }

 private:
  std::string required_;
};

// Broken internal invariant (should be unreachable).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mekler
