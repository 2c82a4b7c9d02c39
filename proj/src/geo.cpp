#include "catalogue/geo.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "embedded_data.hpp"
#include "text_util.hpp"

namespace catalogue::geo {

std::string_view to_string(Macroarea m) {
  switch (m) {
    case Macroarea::Africa: return "Africa";
    case Macroarea::Americas_unspecified: return "Americas_unspecified";
    case Macroarea::Asia: return "Asia";
    case Macroarea::Europe: return "Europe";
    case Macroarea::LatinAmerica_Caribbean: return "LatinAmerica_Caribbean";
    case Macroarea::MiddleEast_NorthAfrica: return "MiddleEast_NorthAfrica";
    case Macroarea::NorthAfrica: return "NorthAfrica";
    case Macroarea::NorthAmerica: return "NorthAmerica";
    case Macroarea::Oceania: return "Oceania";
    case Macroarea::WorldWide: return "WorldWide";
  }
  return "";
}

std::string_view display_name(Macroarea m) {
  switch (m) {
    case Macroarea::Africa: return "Africa";
    case Macroarea::Americas_unspecified: return "Americas (unspecified)";
    case Macroarea::Asia: return "Asia";
    case Macroarea::Europe: return "Europe";
    case Macroarea::LatinAmerica_Caribbean: return "Latin America and the Caribbean";
    case Macroarea::MiddleEast_NorthAfrica: return "Middle East and North Africa";
    case Macroarea::NorthAfrica: return "North Africa";
    case Macroarea::NorthAmerica: return "North America";
    case Macroarea::Oceania: return "Oceania";
    case Macroarea::WorldWide: return "World-wide";
  }
  return "";
}

std::optional<Macroarea> macroarea_from_string(std::string_view s) {
  for (Macroarea m : kAllMacroareas) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::string_view to_string(LocationLevel l) {
  switch (l) {
    case LocationLevel::worldwide: return "worldwide";
    case LocationLevel::macroarea: return "macroarea";
    case LocationLevel::country: return "country";
    case LocationLevel::region: return "region";
  }
  return "";
}

std::optional<LocationLevel> location_level_from_string(std::string_view s) {
  for (auto l : {LocationLevel::worldwide, LocationLevel::macroarea, LocationLevel::country,
                 LocationLevel::region}) {
    if (to_string(l) == s) return l;
  }
  return std::nullopt;
}

Gazetteer Gazetteer::parse(std::string_view text) {
  Gazetteer g;
  std::size_t line_no = 0;
  for (std::string_view line : util::split_lines(text)) {
    ++line_no;
    if (util::trim(line).empty() || line.front() == '#') continue;
    const auto fields = util::split(line, '\t');
    auto fail = [&](const std::string& why) {
      throw std::runtime_error("gazetteer line " + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != 4) fail("expected 4 tab-separated fields");

    GazetteerRecord rec;
    rec.name = std::string(util::trim(fields[0]));
    const auto level = location_level_from_string(util::trim(fields[1]));
    if (!level) fail("unknown level '" + std::string(fields[1]) + "'");
    rec.level = *level;
    rec.country_code = util::to_upper(util::trim(fields[2]));
    const auto macro = macroarea_from_string(util::trim(fields[3]));
    if (!macro) fail("unknown macroarea '" + std::string(fields[3]) + "'");
    rec.macroarea = *macro;

    if (rec.name.empty()) fail("empty name");
    if (rec.level == LocationLevel::country && rec.country_code.size() != 2) {
      fail("country rows need a two-letter code");
    }
    if ((rec.level == LocationLevel::worldwide) != (rec.macroarea == Macroarea::WorldWide)) {
      fail("worldwide level and WorldWide macroarea must coincide");
    }
    const std::string folded = util::to_lower(rec.name);
    if (g.by_folded_name_.count(folded) != 0) fail("duplicate name '" + rec.name + "'");

    const std::size_t idx = g.records_.size();
    g.by_folded_name_.emplace(folded, idx);
    if (rec.level == LocationLevel::country) g.first_by_code_.emplace(rec.country_code, idx);
    g.records_.push_back(std::move(rec));
  }
  return g;
}

Gazetteer Gazetteer::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open gazetteer: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const Gazetteer& Gazetteer::builtin() {
  static const Gazetteer g = parse(embedded::gazetteer_tsv());
  return g;
}

GeoLocation Gazetteer::resolve(std::string_view raw) const {
  GeoLocation loc;
  loc.raw = std::string(raw);
  const auto it = by_folded_name_.find(util::to_lower(util::trim(raw)));
  if (it == by_folded_name_.end()) return loc;
  const GazetteerRecord& rec = records_[it->second];
  loc.level = rec.level;
  loc.macroarea = rec.macroarea;
  loc.country_code = rec.country_code;
  return loc;
}

std::optional<std::string_view> Gazetteer::country_name(std::string_view code) const {
  const auto it = first_by_code_.find(util::to_upper(code));
  if (it == first_by_code_.end()) return std::nullopt;
  return records_[it->second].name;
}

bool is_consistent(const GeoLocation& loc) {
  if (loc.level == LocationLevel::country && loc.country_code.empty()) return false;
  if (loc.level == LocationLevel::worldwide && loc.macroarea != Macroarea::WorldWide) return false;
  if (loc.level == LocationLevel::macroarea && !loc.macroarea) return false;
  if (!loc.country_code.empty() &&
      (loc.country_code.size() != 2 || !util::is_alpha_str(loc.country_code) ||
       util::to_upper(loc.country_code) != loc.country_code)) {
    return false;
  }
  return true;
}

std::optional<Macroarea> first_location_macroarea(std::span<const GeoLocation> locations) {
  if (locations.empty()) return std::nullopt;
  return locations.front().macroarea;
}

}  // namespace catalogue::geo
