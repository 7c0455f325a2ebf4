#pragma once

#include <string>
#include <vector>

#include "autorb/errors.hpp"

namespace autorb {

/// Parsed group constructor expression. Grammar:
///   spec  := NAME '(' arg (',' arg)* ')'
///   arg   := integer | spec
/// Names are case-insensitive, whitespace is ignored. POW and DP take
/// nested specs; everything else takes integers.
struct GroupSpec {
  enum class Name { SL, GL, PSL, PGL, GMF, ASL, EA, A, S, POW, DP };

  Name name;
  std::vector<int> ints;
  std::vector<GroupSpec> subs;

  /// Canonical printed form; parses back to an equal spec.
  std::string str() const;

  bool operator==(const GroupSpec& o) const;
};

/// Parses and validates parameter ranges. Throws parse_error with a
/// position and a distinct kind for syntax errors, unknown constructor
/// names and out-of-range parameters.
GroupSpec parse_spec(const std::string& text);

}  // namespace autorb
