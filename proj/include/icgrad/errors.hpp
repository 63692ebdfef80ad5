#pragma once

#include <stdexcept>
#include <string>

namespace icgrad {

// Caller passed a value outside an operation's documented domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bound's precondition does not hold for the measured data; callers may
// still use the bounds that remain valid.
class InapplicableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed file content. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
  ParseError(const std::string& file, std::size_t line, const std::string& msg)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + msg) {}
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal routine failed to meet its own contract (e.g. an iteration
// that must converge did not).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace icgrad
