#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "catalogue/violation.hpp"

namespace catalogue {

enum class ErrorKind {
  parse_error,
  section_not_applicable,
  validation_failed,
  not_found,
  conflicting_finalize,
  self_validation,
  malformed_csv,
  storage_io,
};

/// Machine id of an error kind ("validation-failed").
std::string_view to_string(ErrorKind k);

/// Failure raised by catalogue operations. Rule violations found while
/// validating are data (ValidationReport); they only become an Error when an
/// operation refuses to proceed because of them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail, std::string field_path = {})
      : std::runtime_error(std::move(detail)), kind_(kind), field_path_(std::move(field_path)) {}

  Error(ValidationReport report, std::string detail)
      : std::runtime_error(std::move(detail)),
        kind_(ErrorKind::validation_failed),
        report_(std::move(report)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field_path() const noexcept { return field_path_; }
  const std::optional<ValidationReport>& report() const noexcept { return report_; }

 private:
  ErrorKind kind_;
  std::string field_path_;
  std::optional<ValidationReport> report_;
};

}  // namespace catalogue
