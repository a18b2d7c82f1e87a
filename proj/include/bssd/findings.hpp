#pragma once

#include "bssd/ids.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bssd {

enum class Severity : std::uint8_t { error, warning };

std::string_view to_string(Severity s);

/// Registered rule ids. Every finding and load diagnostic carries one.
namespace rules {
inline constexpr std::string_view kRQ1 = "V-RQ1";  // division into atomic behavior spaces
inline constexpr std::string_view kRQ2 = "V-RQ2";  // behavioral attributes present and well-formed
inline constexpr std::string_view kRQ3 = "V-RQ3";  // navigable network mirrors lanelet topology
inline constexpr std::string_view kRQ4 = "V-RQ4";  // consistent representation of equal demands
inline constexpr std::string_view kRQ5 = "V-RQ5";  // falsification evidence: coverage, unknown constructs

bool is_registered(std::string_view rule);
}  // namespace rules

/// One validator finding or load diagnostic. `code` names the sub-rule
/// (e.g. "dangling_ref"); `line` is the source line when known.
struct Finding {
  std::string rule;
  Severity severity = Severity::error;
  std::vector<ElementRef> subjects;
  std::string code;
  std::string message;
  int line = 0;

  /// "code: message", the text emitted in the JSON `message` field.
  std::string full_message() const;

  auto operator<=>(const Finding&) const = default;
};

using Diagnostic = Finding;

/// Ordering used for all emitted lists: rule, subjects, code, message.
bool finding_order(const Finding& a, const Finding& b);

std::size_t count_errors(const std::vector<Finding>& findings);

}  // namespace bssd
