#pragma once

// Mixed-granularity locations and their macroarea normalization.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace catalogue::geo {

enum class Macroarea {
  Africa,
  Americas_unspecified,
  Asia,
  Europe,
  LatinAmerica_Caribbean,
  MiddleEast_NorthAfrica,
  NorthAfrica,
  NorthAmerica,
  Oceania,
  WorldWide,
};

inline constexpr std::size_t kMacroareaCount = 10;

inline constexpr std::array<Macroarea, kMacroareaCount> kAllMacroareas = {
    Macroarea::Africa,      Macroarea::Americas_unspecified,   Macroarea::Asia,
    Macroarea::Europe,      Macroarea::LatinAmerica_Caribbean, Macroarea::MiddleEast_NorthAfrica,
    Macroarea::NorthAfrica, Macroarea::NorthAmerica,           Macroarea::Oceania,
    Macroarea::WorldWide,
};

std::string_view to_string(Macroarea m);
/// Row label used in reports ("Latin America and the Caribbean").
std::string_view display_name(Macroarea m);
std::optional<Macroarea> macroarea_from_string(std::string_view s);

enum class LocationLevel { worldwide, macroarea, country, region };

std::string_view to_string(LocationLevel l);
std::optional<LocationLevel> location_level_from_string(std::string_view s);

struct GeoLocation {
  std::string raw;
  LocationLevel level = LocationLevel::region;
  std::optional<Macroarea> macroarea;
  std::string country_code;

  friend bool operator==(const GeoLocation&, const GeoLocation&) = default;
};

struct GazetteerRecord {
  std::string name;
  LocationLevel level;
  std::string country_code;
  Macroarea macroarea;
};

class Gazetteer {
 public:
  Gazetteer() = default;

  /// Parses `name<TAB>level<TAB>country_code?<TAB>macroarea` lines.
  static Gazetteer parse(std::string_view text);
  static Gazetteer load(const std::string& path);
  static const Gazetteer& builtin();

  /// Exact (ASCII case-insensitive, whitespace-trimmed) name match. Unknown
  /// names resolve to a region with no macroarea; `raw` is kept verbatim.
  GeoLocation resolve(std::string_view raw) const;

  /// Display name of a country code: the first record listed for it.
  std::optional<std::string_view> country_name(std::string_view code) const;

  const std::vector<GazetteerRecord>& records() const { return records_; }

 private:
  std::vector<GazetteerRecord> records_;
  std::map<std::string, std::size_t, std::less<>> by_folded_name_;
  std::map<std::string, std::size_t, std::less<>> first_by_code_;
};

inline GeoLocation resolve_location(std::string_view raw) {
  return Gazetteer::builtin().resolve(raw);
}

/// Consistency of the level/macroarea/country_code fields.
bool is_consistent(const GeoLocation& loc);

/// Macroarea of the first location; nullopt ("missing") when the list is
/// empty or the first location did not resolve.
std::optional<Macroarea> first_location_macroarea(std::span<const GeoLocation> locations);

}  // namespace catalogue::geo
