#pragma once

#include <stdexcept>
#include <string>

namespace centrosec {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Operation not defined for this body representation (e.g. touch point of a
// polytope, whose supporting hyperplanes may meet it in a whole face).
struct UnsupportedRepresentation : std::logic_error {
  using std::logic_error::logic_error;
};

// (K, L) pair that violates the containment margin.
struct RejectedInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateSection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace centrosec
