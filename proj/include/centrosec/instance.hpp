#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>

#include "centrosec/body.hpp"
#include "centrosec/solver.hpp"

namespace centrosec {

/// A (K, L) problem instance read from a body specification file.
///
/// The format is line-oriented `key = value` text; `#` starts a comment.
/// Keys are `dimension`, `seed`, `K.<field>`, `L.<field>` and
/// `solver.<field>`. See docs/instance-format.md for the grammar.
struct InstanceSpec {
  int dimension = 0;
  std::uint64_t seed = 0;
  std::optional<ConvexBody> K;
  std::optional<ConvexBody> L;
  SolverConfig solver;
};

/// Throws ParseError naming the offending line or field.
InstanceSpec parse_instance(std::istream& in);
InstanceSpec parse_instance_string(const std::string& text);
InstanceSpec load_instance(const std::string& path);

}  // namespace centrosec
