#pragma once

#include <stdexcept>
#include <string>

namespace sptk {

enum class ErrorCode {
  not_hermitian,
  not_normal,
  not_commuting,
  shape_mismatch,
  invalid_algebra,
  empty_fiber,
  invalid_state,
  algebra_mismatch,
  invalid_homomorphism,
  no_real_structure,
  degree_zero,
  parity_mismatch,
  real_structure_mismatch,
  not_invariant,
  too_many_characters,
  too_many_grid_points,
  invalid_morphism,
  kind_mismatch,
  endpoint_mismatch,
  not_isometric,
  not_onto_components,
  nonpositive_length,
  too_few_points,
  invalid_geometry,
  invalid_argument,
  parse_error,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sptk
