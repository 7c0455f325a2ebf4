#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace autorb {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid field parameters, or operands from different fields.
class field_error : public error {
public:
  using error::error;
};

/// Matrix/permutation dimension mismatch or unsupported size.
class dim_error : public error {
public:
  using error::error;
};

/// Inversion of a singular matrix or of the zero element.
class singular_error : public error {
public:
  using error::error;
};

/// Enumeration or search exceeded a configured resource cap.
class cap_error : public error {
public:
  using error::error;
};

/// A map that must be an automorphism failed verification, or a subgroup
/// required to be invariant under a map is not.
class verify_error : public error {
public:
  using error::error;
};

/// Structural precondition failed (non-normal subgroup, incompatible
/// element kinds, wrong constructor, postcondition mismatch).
class structure_error : public error {
public:
  using error::error;
};

/// Group-spec string could not be parsed.
class parse_error : public error {
public:
  enum class Kind { syntax, unknown_name, bad_params };

  parse_error(Kind kind, std::size_t pos, const std::string& what)
      : error(what), kind_(kind), pos_(pos) {}

  Kind kind() const { return kind_; }
  std::size_t position() const { return pos_; }

private:
  Kind kind_;
  std::size_t pos_;
};

}  // namespace autorb
