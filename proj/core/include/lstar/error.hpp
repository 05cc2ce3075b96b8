#pragma once

#include <stdexcept>
#include <string>

namespace lstar {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Surface-syntax errors carry a 1-based source position.
struct ParseError : Error {
  int line, column;
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line(line), column(column) {}
};

struct ArityError : Error {
  using Error::Error;
};

struct EvalError : Error {
  using Error::Error;
};

struct NotDelta0Error : Error {
  using Error::Error;
};

struct NotClosedError : Error {
  using Error::Error;
};

struct NotPrenexError : Error {
  using Error::Error;
};

// Raised when the bounded-quantifier enumerator exceeds its assignment ceiling.
struct CeilingExceededError : Error {
  using Error::Error;
};

struct DecodeError : Error {
  using Error::Error;
};

struct CutError : Error {
  using Error::Error;
};

}  // namespace lstar
