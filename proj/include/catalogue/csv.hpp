#pragma once

// Flat CSV form of catalogue entries for bulk import. Only the commonly
// answered fields are addressable; nested dataset source descriptions,
// source licenses and per-language variety comments require JSON.
//
// Multi-valued cells separate items with '|'. Free-response answers are
// written "other:<text>". A languages item is "Group:tag", "Group:" or "tag".

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catalogue/schema.hpp"

namespace catalogue::csv {

/// The exact header row, in order.
std::span<const std::string_view> columns();

struct Record {
  /// 1-based line on which the record starts.
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// RFC 4180 records. Throws Error{malformed_csv} on an unterminated quote.
std::vector<Record> parse(std::string_view text);

std::string format_row(std::span<const std::string> fields);

struct RowError {
  std::string field_path;
  std::string detail;
};

struct Row {
  std::size_t line = 0;
  std::optional<CatalogueEntry> entry;
  std::optional<RowError> error;
};

/// Converts each data record to an entry. Throws Error{malformed_csv} when
/// the header differs from columns() or a record has the wrong field count.
std::vector<Row> entries_from_csv(std::string_view text);

std::string entries_to_csv(std::span<const CatalogueEntry> entries);

/// True when entries_from_csv(entries_to_csv({e})) reproduces `e` exactly.
bool csv_addressable(const CatalogueEntry& e);

}  // namespace catalogue::csv
