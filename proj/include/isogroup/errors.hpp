#ifndef ISOGROUP_ERRORS_HPP
#define ISOGROUP_ERRORS_HPP

/**
 * @file errors.hpp
 * @brief Typed error conditions shared by all modules.
 */

#include <stdexcept>
#include <string>

namespace isogroup {

enum class errc {
  // rational arithmetic / parsing
  parse_error,
  zero_denominator,
  overflow,
  // metric space validation
  asymmetric_matrix,
  nonzero_diagonal,
  nonpositive_off_diagonal,
  triangle_violation,
  degenerate_space,
  empty_subset,
  fewer_than_two_points,
  repeated_index,
  duplicate_label,
  // one-point extensions
  katetov_lower,
  katetov_upper,
  base_mismatch,
  not_supported,
  diameter_exceeds_one,
  spec_violation,
  zero_on_base,
  // isometry search
  not_a_bijection,
  not_an_isometry,
  space_mismatch,
  size_guard_exceeded,
  too_large_for_oracle,
  // groups
  not_associative,
  no_identity,
  no_inverse,
  order_cap_exceeded,
  not_left_invariant,
  disconnected_word_metric,
  // realization
  lemma1_failed,
  extension_not_isometric,
  cover_unsound,
  invalid_argument,
};

/// Exception type carrying a machine-checkable error code and a
/// human-readable message naming the offending indices or values.
class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace isogroup

#endif
