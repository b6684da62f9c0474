#pragma once

#include <stdexcept>
#include <string>

namespace transpoly {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input (margins files, rational literals, CLI arguments).
class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidMargins : public Error {
 public:
  using Error::Error;
};

class NonIntegral : public Error {
 public:
  using Error::Error;
};

// A broken internal invariant; a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace transpoly
