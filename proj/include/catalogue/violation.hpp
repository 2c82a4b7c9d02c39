#pragma once

#include <string>
#include <vector>

namespace catalogue {

enum class Severity { error, warning };

/// One broken rule. `rule` is a stable machine id ("section-applicability").
struct Violation {
  std::string rule;
  std::string field_path;
  std::string detail;
  Severity severity = Severity::error;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  /// True when no error-severity violations exist. Warnings do not block saves.
  bool accepted() const {
    for (const auto& v : violations) {
      if (v.severity == Severity::error) return false;
    }
    return true;
  }
  bool clean() const { return violations.empty(); }
  bool has_rule(const std::string& rule) const {
    for (const auto& v : violations) {
      if (v.rule == rule) return true;
    }
    return false;
  }

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

}  // namespace catalogue
