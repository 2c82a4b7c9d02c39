#pragma once

// Entry validation. Violations are data: validate_entry never throws and
// reports each broken (rule, field path) pair once, in a fixed order.

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catalogue/schema.hpp"
#include "catalogue/violation.hpp"

namespace catalogue {

/// uid -> resource type of every entry cross-references may point at.
using CatalogueIndex = std::map<std::string, ResourceType, std::less<>>;

namespace rules {
inline constexpr std::string_view uid_format = "uid-format";
inline constexpr std::string_view name_required = "name-required";
inline constexpr std::string_view description_required = "description-required";
inline constexpr std::string_view url_format = "url-format";
inline constexpr std::string_view email_format = "email-format";
inline constexpr std::string_view submitter_required = "submitter-required";
inline constexpr std::string_view languages_required = "languages-required";
inline constexpr std::string_view language_selection_empty = "language-selection-empty";
inline constexpr std::string_view language_group_mismatch = "language-group-mismatch";
inline constexpr std::string_view location_level = "location-level";
inline constexpr std::string_view section_applicability = "section-applicability";
inline constexpr std::string_view custodian_missing = "custodian-missing";
inline constexpr std::string_view custodian_incomplete = "custodian-incomplete";
inline constexpr std::string_view custodian_link_target = "custodian-link-target";
inline constexpr std::string_view download_url_required = "download-url-required";
inline constexpr std::string_view contact_required = "contact-required";
inline constexpr std::string_view license_assessment_required = "license-assessment-required";
inline constexpr std::string_view pii_justification_required = "pii-justification-required";
inline constexpr std::string_view pii_kind_likelihood = "pii-kind-likelihood";
inline constexpr std::string_view source_type_detail = "source-type-detail";
inline constexpr std::string_view dataset_original_fields = "dataset-original-fields";
inline constexpr std::string_view link_target_type = "link-target-type";
inline constexpr std::string_view media_required = "media-required";
inline constexpr std::string_view transcription_source = "transcription-source";
inline constexpr std::string_view magnitude_range = "magnitude-range";

/// Every rule id, in reporting order.
std::span<const std::string_view> all();
}  // namespace rules

/// Lowercase ASCII letters, digits and hyphens, 3 to 64 characters.
bool is_valid_uid(std::string_view uid);
bool is_valid_url(std::string_view url);
bool is_valid_email(std::string_view email);

ValidationReport validate_entry(const CatalogueEntry& entry, const CatalogueIndex& catalogue);

/// Index of a set of entries (uid -> rtype).
CatalogueIndex make_index(std::span<const CatalogueEntry> entries);

/// Validates every entry against the same index. Parallel over entries.
std::vector<ValidationReport> validate_all(std::span<const CatalogueEntry> entries,
                                           const CatalogueIndex& catalogue);

}  // namespace catalogue
