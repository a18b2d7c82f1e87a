#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bssd {

enum class ErrorCode {
  invariant_violation,
  malformed_xml,
  duplicate_id,
  schema,
  io,
  unknown_lanelet,
  unknown_space,
  unknown_vertex,
  unknown_element,
  already_covered,
  missing_direction,
  non_adjacent_steps,
  invalid_argument,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library. `code()` carries the machine-readable
/// category; `what()` is prefixed with it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bssd
