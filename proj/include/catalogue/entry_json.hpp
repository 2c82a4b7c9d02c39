#pragma once

// Canonical JSON form of catalogue entries. This byte format is what the
// store writes to disk, what the HTTP API speaks, and what exports contain:
// object keys sorted, UTF-8, no insignificant whitespace, absent optionals
// omitted.

#include <string>
#include <string_view>

#include "catalogue/errors.hpp"
#include "catalogue/schema.hpp"
#include "json.hpp"

namespace catalogue {

using Json = nlohmann::json;

/// Serializes to canonical bytes. Deterministic: equal entries give equal bytes.
std::string entry_to_canonical_json(const CatalogueEntry& entry);

/// Parses JSON text. Throws Error{parse_error} with the offending field path
/// for malformed JSON, unknown keys, wrong types, or out-of-vocabulary values.
CatalogueEntry entry_from_json(std::string_view bytes);

Json entry_to_json(const CatalogueEntry& entry);
CatalogueEntry entry_from_json_value(const Json& j);

/// Canonical text of any JSON value (sorted keys, compact, UTF-8).
std::string canonical_dump(const Json& j);

/// JSON payload of one section; null when the entry lacks it.
Json section_to_json(const CatalogueEntry& entry, Section section);

/// Returns a copy of `entry` with `section` replaced by `payload`. A null
/// payload clears an optional section. Throws Error{section_not_applicable}
/// when the section does not belong to the entry's resource type, and
/// Error{parse_error} when the payload does not parse as the section type.
CatalogueEntry apply_section_edit(const CatalogueEntry& entry, Section section,
                                  const Json& payload);

std::string_view section_name(Section s);
/// Throws Error{parse_error} for unknown names.
Section section_from_name(std::string_view name);

Json location_to_json(const GeoLocation& loc);
Json license_to_json(const LicenseInfo& license);
Json person_to_json(const Person& p);
/// {"accepted": bool, "violations": [{rule, field_path, detail, severity}]}
Json report_to_json(const ValidationReport& report);
Person person_from_json(const Json& j, const std::string& path);

}  // namespace catalogue
