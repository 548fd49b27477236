#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coproc {

// Base of every error thrown by the library. The CLI maps all of these to
// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: dangling ids, foreign nodes, symbols outside an alphabet.
class InputError : public Error {
 public:
  using Error::Error;
};

// Parse failure in one of the text formats; carries the 1-based line.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A value outside the domain of an operation (non-numeric game, empty
// interval, missing table entry).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation that needs a well-founded argument received a cyclic one.
class WellFoundednessError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A size bound was exceeded (vn bound, tower stage, fixed-width arithmetic).
class BoundError : public Error {
 public:
  using Error::Error;
};

// A program-as-process step did not produce an (output, residual) pair.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace coproc
