#include "bssd/findings.hpp"

#include <algorithm>
#include <tuple>

namespace bssd {

std::string_view to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

bool rules::is_registered(std::string_view rule) {
  return rule == kRQ1 || rule == kRQ2 || rule == kRQ3 || rule == kRQ4 || rule == kRQ5;
}

std::string Finding::full_message() const { return message.empty() ? code : code + ": " + message; }

bool finding_order(const Finding& a, const Finding& b) {
  return std::tie(a.rule, a.subjects, a.code, a.message, a.severity) <
         std::tie(b.rule, b.subjects, b.code, b.message, b.severity);
}

std::size_t count_errors(const std::vector<Finding>& findings) {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::error; }));
}

}  // namespace bssd
