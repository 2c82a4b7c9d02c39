#pragma once

// Catalogue-wide distributions over the latest entry versions.
//
// Each operation first reduces entries to compact per-entry facts
// (build_facts), then counts over the facts. The counting kernels run in
// parallel with OpenMP; the `serial` namespace holds straightforward
// single-threaded versions that the parallel ones are tested against.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catalogue/entry_json.hpp"
#include "catalogue/schema.hpp"

namespace catalogue::store {
class Snapshot;
struct Filter;
}

namespace catalogue::analytics {

enum class DenominatorKind { entries, tag_occurrences, custodians, license_mentions };
enum class PercentStyle { integer, two_decimals, none };

std::string_view to_string(DenominatorKind k);

struct Row {
  std::string id;
  std::string label;
  std::uint64_t count = 0;

  friend bool operator==(const Row&, const Row&) = default;
};

struct Distribution {
  std::string table;
  std::vector<Row> rows;
  /// Zero only for an empty distribution (no rows).
  std::uint64_t denominator = 0;
  DenominatorKind denominator_kind = DenominatorKind::entries;
  /// Entries outside every row, for tables that report them separately.
  std::optional<std::uint64_t> missing;
  PercentStyle style = PercentStyle::none;

  bool empty() const { return rows.empty(); }
  const Row* find(std::string_view id) const;

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

struct CrossTab {
  std::string table;
  std::vector<Row> row_keys;     // count unused
  std::vector<Row> column_keys;  // count = column total
  /// counts[r][c]
  std::vector<std::vector<std::uint64_t>> counts;

  friend bool operator==(const CrossTab&, const CrossTab&) = default;
};

struct TagList {
  std::vector<std::string> tags;
  std::size_t count() const { return tags.size(); }

  friend bool operator==(const TagList&, const TagList&) = default;
};

// Rounding. Both round half up and are exact on integers.

/// Whole percent: 98/192 -> 51.
std::uint64_t percent_rounded(std::uint64_t count, std::uint64_t denominator);
/// Hundredths of a percent: 18/192 -> 938 (9.38%).
std::uint64_t percent_hundredths(std::uint64_t count, std::uint64_t denominator);
/// "51%", "9.38%", or "" for PercentStyle::none.
std::string format_percent(std::uint64_t count, std::uint64_t denominator, PercentStyle style);

// Per-entry facts.

inline constexpr std::uint32_t kOtherGroupBit = 1u << langtag::kTargetGroupCount;

struct EntryFacts {
  ResourceType rtype = ResourceType::organization;
  /// Bit g set for each target group; kOtherGroupBit when some selection
  /// has no group.
  std::uint32_t groups = 0;
  /// Sentinel kMacroareaCount when missing.
  std::uint8_t first_macroarea = geo::kMacroareaCount;
  /// Bit per macroarea over all locations.
  std::uint16_t macroareas = 0;
  /// Sentinel 0xff when the effective custodian type is unknown.
  std::uint8_t custodian_type = 0xff;
  /// Index into Facts::custodian_labels, or -1.
  std::int32_t custodian_location = -1;
  bool has_availability = false;
  /// Bit per LicenseProperty.
  std::uint8_t license_properties = 0;
  /// PiiContains value, sentinel 0xff when unanswered.
  std::uint8_t pii = 0xff;
  /// Indices into Facts::tags (distinct per entry).
  std::vector<std::uint32_t> tags;
};

struct Facts {
  std::vector<EntryFacts> entries;
  std::vector<std::string> custodian_labels;
  std::vector<std::string> tags;
  /// Parallel to `tags`: the tag belongs to a target group.
  std::vector<bool> tag_in_group;
};

/// Custodian types and locations follow a custodian's link to an
/// organization entry when the custodian does not state them itself.
Facts build_facts(std::span<const CatalogueEntry> entries);
Facts build_facts(const store::Snapshot& snapshot);
/// Facts of the entries matching `filter`; links resolve against the whole snapshot.
Facts build_facts(const store::Snapshot& snapshot, const store::Filter& filter);

/// Display label of a custodian location: the gazetteer name of its
/// country, else the macroarea name, else the text as entered.
std::string location_label(const GeoLocation& loc);

// Operations (parallel).

Distribution type_distribution(const Facts& f);
Distribution language_group_distribution(const Facts& f);
Distribution first_location_distribution(const Facts& f);
Distribution language_by_region(const Facts& f, TargetGroup group);
Distribution custodian_type_distribution(const Facts& f);
Distribution custodian_location_top(const Facts& f, std::size_t n);
Distribution license_property_distribution(const Facts& f);
Distribution pii_distribution(const Facts& f);
TagList singleton_languages(const Facts& f, bool exclude_target_group_members);
/// Resource types per target group (rows: groups; columns: types).
CrossTab type_by_language_group(const Facts& f);

namespace serial {
Distribution type_distribution(const Facts& f);
Distribution language_group_distribution(const Facts& f);
Distribution first_location_distribution(const Facts& f);
Distribution language_by_region(const Facts& f, TargetGroup group);
Distribution custodian_type_distribution(const Facts& f);
Distribution custodian_location_top(const Facts& f, std::size_t n);
Distribution license_property_distribution(const Facts& f);
Distribution pii_distribution(const Facts& f);
TagList singleton_languages(const Facts& f, bool exclude_target_group_members);
CrossTab type_by_language_group(const Facts& f);
Facts build_facts(std::span<const CatalogueEntry> entries);
}  // namespace serial

// Emitters.

std::string to_csv(const Distribution& d);
std::string to_markdown(const Distribution& d);
Json to_json(const Distribution& d);

std::string to_csv(const CrossTab& t);
std::string to_markdown(const CrossTab& t);
Json to_json(const CrossTab& t);

std::string to_csv(const TagList& t);
std::string to_markdown(const TagList& t);
Json to_json(const TagList& t);

}  // namespace catalogue::analytics
