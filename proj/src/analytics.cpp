#include "catalogue/analytics.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <map>
#include <unordered_map>

#include "catalogue/store.hpp"
#include "text_util.hpp"

namespace catalogue::analytics {
namespace {

constexpr std::size_t kTypes = 3;
constexpr std::size_t kGroups = langtag::kTargetGroupCount;
constexpr std::size_t kMacro = geo::kMacroareaCount;
constexpr std::size_t kCustodianTypes = 8;
constexpr std::size_t kLicense = 7;
constexpr std::size_t kPii = 4;
constexpr std::uint8_t kNone = 0xff;

static_assert(vocab_values<ResourceType>().size() == kTypes);
static_assert(vocab_values<CustodianType>().size() == kCustodianTypes);
static_assert(vocab_values<LicenseProperty>().size() == kLicense);
static_assert(vocab_values<PiiContains>().size() == kPii);

template <class E>
std::size_t idx(E e) {
  return static_cast<std::size_t>(e);
}

/// Sorts rows by count descending, then label ascending.
void sort_by_count(std::vector<Row>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.label < b.label;
  });
}

Distribution make(std::string table, std::uint64_t denominator, PercentStyle style,
                  DenominatorKind kind = DenominatorKind::entries) {
  Distribution d;
  d.table = std::move(table);
  d.denominator = denominator;
  d.style = style;
  d.denominator_kind = kind;
  return d;
}

std::vector<TargetGroup> groups_by_label() {
  std::vector<TargetGroup> out(langtag::kAllTargetGroups.begin(), langtag::kAllTargetGroups.end());
  std::sort(out.begin(), out.end(), [](TargetGroup a, TargetGroup b) {
    return langtag::display_name(a) < langtag::display_name(b);
  });
  return out;
}

// Assembly from raw counts, shared by the serial and parallel kernels.

Distribution assemble_types(std::uint64_t n, const std::array<std::uint64_t, kTypes>& c) {
  if (n == 0) return make("types", 0, PercentStyle::integer);
  auto d = make("types", n, PercentStyle::integer);
  for (ResourceType t : vocab_values<ResourceType>()) {
    d.rows.push_back({std::string(vocab_id(t)), std::string(display_name(t)), c[idx(t)]});
  }
  return d;
}

Distribution assemble_groups(std::uint64_t n, const std::array<std::uint64_t, kGroups + 1>& c) {
  if (n == 0) return make("languages", 0, PercentStyle::integer);
  auto d = make("languages", n, PercentStyle::integer);
  for (TargetGroup g : groups_by_label()) {
    d.rows.push_back({std::string(langtag::to_string(g)), std::string(langtag::display_name(g)),
                      c[idx(g)]});
  }
  d.rows.push_back({"other", "Other", c[kGroups]});
  return d;
}

Distribution assemble_macro(std::string table, std::uint64_t n,
                            const std::array<std::uint64_t, kMacro + 1>& c, PercentStyle style) {
  if (n == 0) return make(std::move(table), 0, style);
  auto d = make(std::move(table), n, style);
  for (geo::Macroarea m : geo::kAllMacroareas) {
    d.rows.push_back({std::string(geo::to_string(m)), std::string(geo::display_name(m)), c[idx(m)]});
  }
  d.missing = c[kMacro];
  return d;
}

Distribution assemble_custodian_types(std::uint64_t n,
                                      const std::array<std::uint64_t, kCustodianTypes + 1>& c) {
  if (n == 0) return make("custodian_types", 0, PercentStyle::two_decimals);
  auto d = make("custodian_types", n, PercentStyle::two_decimals);
  for (CustodianType t : vocab_values<CustodianType>()) {
    d.rows.push_back({std::string(vocab_id(t)), std::string(display_name(t)), c[idx(t)]});
  }
  sort_by_count(d.rows);
  d.missing = c[kCustodianTypes];
  return d;
}

Distribution assemble_locations_top(const Facts& f, const std::vector<std::uint64_t>& per_label,
                                    std::uint64_t with, std::uint64_t without, std::size_t n) {
  if (with + without == 0) return make("custodian_locations", 0, PercentStyle::none);
  auto d = make("custodian_locations", with, PercentStyle::none);
  std::vector<Row> rows;
  for (std::size_t i = 0; i < per_label.size(); ++i) {
    if (per_label[i] > 0) rows.push_back({f.custodian_labels[i], f.custodian_labels[i], per_label[i]});
  }
  sort_by_count(rows);
  if (rows.size() > n) rows.resize(n);
  d.rows = std::move(rows);
  d.missing = without;
  return d;
}

Distribution assemble_license(std::uint64_t n, const std::array<std::uint64_t, kLicense + 1>& c) {
  if (n == 0) return make("licenses", 0, PercentStyle::integer);
  auto d = make("licenses", n, PercentStyle::integer);
  d.rows.push_back({"missing", "Missing", c[kLicense]});
  for (LicenseProperty p : vocab_values<LicenseProperty>()) {
    d.rows.push_back({std::string(vocab_id(p)), std::string(display_name(p)), c[idx(p)]});
  }
  sort_by_count(d.rows);
  return d;
}

Distribution assemble_pii(std::uint64_t n, const std::array<std::uint64_t, kPii + 1>& c) {
  if (n == 0) return make("pii", 0, PercentStyle::integer);
  auto d = make("pii", n, PercentStyle::integer);
  for (PiiContains p : vocab_values<PiiContains>()) {
    d.rows.push_back({std::string(vocab_id(p)), std::string(display_name(p)), c[idx(p)]});
  }
  d.rows.push_back({"answer_missing", "Answer Missing", c[kPii]});
  sort_by_count(d.rows);
  return d;
}

TagList assemble_singletons(const Facts& f, const std::vector<std::uint64_t>& per_tag,
                            bool exclude) {
  TagList out;
  for (std::size_t i = 0; i < per_tag.size(); ++i) {
    if (per_tag[i] == 0 || per_tag[i] > 2) continue;
    if (exclude && f.tag_in_group[i]) continue;
    out.tags.push_back(f.tags[i]);
  }
  std::sort(out.tags.begin(), out.tags.end());
  return out;
}

CrossTab assemble_crosstab(const std::array<std::array<std::uint64_t, kTypes>, kGroups>& c,
                           const std::array<std::uint64_t, kTypes>& totals) {
  CrossTab t;
  t.table = "type_by_language_group";
  for (ResourceType rt : vocab_values<ResourceType>()) {
    t.column_keys.push_back(
        {std::string(vocab_id(rt)), std::string(display_name(rt)), totals[idx(rt)]});
  }
  for (TargetGroup g : groups_by_label()) {
    t.row_keys.push_back(
        {std::string(langtag::to_string(g)), std::string(langtag::display_name(g)), 0});
    t.counts.emplace_back(c[idx(g)].begin(), c[idx(g)].end());
  }
  return t;
}

// Per-entry fact extraction. Strings are interned in a second, serial pass.

struct RawFacts {
  EntryFacts facts;
  std::optional<std::string> custodian_label;
  std::vector<std::string> tags;
  std::vector<bool> tag_in_group;
};

using Lookup = std::unordered_map<std::string_view, const CatalogueEntry*>;

const CatalogueEntry* linked_org(const CatalogueEntry& e, const Lookup& by_uid) {
  if (!e.custodian || !e.custodian->link_uid) return nullptr;
  const auto it = by_uid.find(*e.custodian->link_uid);
  if (it == by_uid.end() || it->second->rtype != ResourceType::organization) return nullptr;
  return it->second;
}

RawFacts extract(const CatalogueEntry& e, const Lookup& by_uid) {
  RawFacts r;
  EntryFacts& f = r.facts;
  f.rtype = e.rtype;

  const auto& table = langtag::MembershipTable::builtin();
  for (const auto& sel : e.languages) {
    std::optional<TargetGroup> g = sel.group;
    if (!g && sel.tag) g = langtag::group_of(*sel.tag, table);
    f.groups |= g ? (1u << idx(*g)) : kOtherGroupBit;
    if (sel.tag) {
      std::string s = langtag::normalize_tag(*sel.tag).str();
      if (std::find(r.tags.begin(), r.tags.end(), s) == r.tags.end()) {
        r.tags.push_back(std::move(s));
        r.tag_in_group.push_back(langtag::group_of(*sel.tag, table).has_value());
      }
    }
  }

  if (auto m = first_location_macroarea(e)) f.first_macroarea = static_cast<std::uint8_t>(idx(*m));
  for (const auto& loc : e.locations) {
    if (loc.macroarea) f.macroareas |= static_cast<std::uint16_t>(1u << idx(*loc.macroarea));
  }

  if (e.custodian) {
    const CatalogueEntry* org = linked_org(e, by_uid);
    const Custodian* linked = org && org->custodian ? &*org->custodian : nullptr;
    std::optional<CustodianType> ct = e.custodian->ctype;
    if (!ct && linked) ct = linked->ctype;
    if (ct) f.custodian_type = static_cast<std::uint8_t>(idx(*ct));
    const GeoLocation* loc = e.custodian->location ? &*e.custodian->location : nullptr;
    if (!loc && linked && linked->location) loc = &*linked->location;
    if (loc) r.custodian_label = location_label(*loc);
  }

  if (e.availability) {
    f.has_availability = true;
    for (LicenseProperty p : e.availability->license.properties) {
      f.license_properties |= static_cast<std::uint8_t>(1u << idx(p));
    }
    if (e.availability->pii.contains) f.pii = static_cast<std::uint8_t>(idx(*e.availability->pii.contains));
  }
  return r;
}

Lookup make_lookup(std::span<const CatalogueEntry> entries) {
  Lookup by_uid;
  by_uid.reserve(entries.size());
  for (const auto& e : entries) by_uid.emplace(e.uid(), &e);
  return by_uid;
}

Facts intern(std::vector<RawFacts>& raw) {
  Facts out;
  out.entries.reserve(raw.size());
  std::map<std::string, std::uint32_t> labels;
  std::map<std::string, std::uint32_t> tags;
  for (auto& r : raw) {
    if (r.custodian_label) {
      auto [it, fresh] =
          labels.emplace(*r.custodian_label, static_cast<std::uint32_t>(out.custodian_labels.size()));
      if (fresh) out.custodian_labels.push_back(*r.custodian_label);
      r.facts.custodian_location = static_cast<std::int32_t>(it->second);
    }
    for (std::size_t i = 0; i < r.tags.size(); ++i) {
      auto [it, fresh] = tags.emplace(r.tags[i], static_cast<std::uint32_t>(out.tags.size()));
      if (fresh) {
        out.tags.push_back(r.tags[i]);
        out.tag_in_group.push_back(r.tag_in_group[i]);
      }
      r.facts.tags.push_back(it->second);
    }
    out.entries.push_back(std::move(r.facts));
  }
  return out;
}

std::int64_t ssize(const Facts& f) { return static_cast<std::int64_t>(f.entries.size()); }

}  // namespace

std::string_view to_string(DenominatorKind k) {
  switch (k) {
    case DenominatorKind::entries: return "entries";
    case DenominatorKind::tag_occurrences: return "tag_occurrences";
    case DenominatorKind::custodians: return "custodians";
    case DenominatorKind::license_mentions: return "license_mentions";
  }
  return "entries";
}

const Row* Distribution::find(std::string_view id) const {
  for (const auto& r : rows) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::uint64_t percent_rounded(std::uint64_t count, std::uint64_t denominator) {
  if (denominator == 0) return 0;
  return (count * 200 + denominator) / (2 * denominator);
}

std::uint64_t percent_hundredths(std::uint64_t count, std::uint64_t denominator) {
  if (denominator == 0) return 0;
  return (count * 20000 + denominator) / (2 * denominator);
}

std::string format_percent(std::uint64_t count, std::uint64_t denominator, PercentStyle style) {
  switch (style) {
    case PercentStyle::integer: return std::to_string(percent_rounded(count, denominator)) + "%";
    case PercentStyle::two_decimals: {
      const auto h = percent_hundredths(count, denominator);
      const auto frac = h % 100;
      return std::to_string(h / 100) + "." + (frac < 10 ? "0" : "") + std::to_string(frac) + "%";
    }
    case PercentStyle::none: return "";
  }
  return "";
}

std::string location_label(const GeoLocation& loc) {
  if (!loc.country_code.empty()) {
    if (auto name = geo::Gazetteer::builtin().country_name(loc.country_code)) {
      return std::string(*name);
    }
  }
  if ((loc.level == geo::LocationLevel::macroarea || loc.level == geo::LocationLevel::worldwide) &&
      loc.macroarea) {
    return std::string(geo::display_name(*loc.macroarea));
  }
  return std::string(util::trim(loc.raw));
}

// Facts

Facts serial::build_facts(std::span<const CatalogueEntry> entries) {
  const Lookup by_uid = make_lookup(entries);
  std::vector<RawFacts> raw;
  raw.reserve(entries.size());
  for (const auto& e : entries) raw.push_back(extract(e, by_uid));
  return intern(raw);
}

Facts build_facts(std::span<const CatalogueEntry> entries) {
  const Lookup by_uid = make_lookup(entries);
  std::vector<RawFacts> raw(entries.size());
  const auto n = static_cast<std::int64_t>(entries.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    raw[static_cast<std::size_t>(i)] = extract(entries[static_cast<std::size_t>(i)], by_uid);
  }
  return intern(raw);
}

Facts build_facts(const store::Snapshot& snapshot) {
  const auto entries = snapshot.entries();
  return build_facts(entries);
}

Facts build_facts(const store::Snapshot& snapshot, const store::Filter& filter) {
  const auto all = snapshot.entries();
  const Lookup by_uid = make_lookup(all);
  std::vector<const CatalogueEntry*> selected;
  for (const auto& e : all) {
    if (store::matches(filter, e, snapshot)) selected.push_back(&e);
  }
  std::vector<RawFacts> raw(selected.size());
  const auto n = static_cast<std::int64_t>(selected.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    raw[static_cast<std::size_t>(i)] = extract(*selected[static_cast<std::size_t>(i)], by_uid);
  }
  return intern(raw);
}

// Serial kernels

Distribution serial::type_distribution(const Facts& f) {
  std::array<std::uint64_t, kTypes> c{};
  for (const auto& e : f.entries) ++c[idx(e.rtype)];
  return assemble_types(f.entries.size(), c);
}

Distribution serial::language_group_distribution(const Facts& f) {
  std::array<std::uint64_t, kGroups + 1> c{};
  for (const auto& e : f.entries) {
    for (std::size_t g = 0; g <= kGroups; ++g) {
      if (e.groups & (1u << g)) ++c[g];
    }
  }
  return assemble_groups(f.entries.size(), c);
}

Distribution serial::first_location_distribution(const Facts& f) {
  std::array<std::uint64_t, kMacro + 1> c{};
  for (const auto& e : f.entries) ++c[e.first_macroarea];
  return assemble_macro("locations", f.entries.size(), c, PercentStyle::two_decimals);
}

Distribution serial::language_by_region(const Facts& f, TargetGroup group) {
  std::array<std::uint64_t, kMacro + 1> c{};
  std::uint64_t n = 0;
  const std::uint32_t bit = 1u << idx(group);
  for (const auto& e : f.entries) {
    if (!(e.groups & bit)) continue;
    ++n;
    if (e.macroareas == 0) ++c[kMacro];
    for (std::size_t m = 0; m < kMacro; ++m) {
      if (e.macroareas & (1u << m)) ++c[m];
    }
  }
  return assemble_macro("language_by_region." + std::string(langtag::to_string(group)), n, c,
                        PercentStyle::none);
}

Distribution serial::custodian_type_distribution(const Facts& f) {
  std::array<std::uint64_t, kCustodianTypes + 1> c{};
  for (const auto& e : f.entries) ++c[e.custodian_type == kNone ? kCustodianTypes : e.custodian_type];
  return assemble_custodian_types(f.entries.size(), c);
}

Distribution serial::custodian_location_top(const Facts& f, std::size_t n) {
  std::vector<std::uint64_t> per_label(f.custodian_labels.size(), 0);
  std::uint64_t with = 0;
  std::uint64_t without = 0;
  for (const auto& e : f.entries) {
    if (e.custodian_location < 0) {
      ++without;
    } else {
      ++with;
      ++per_label[static_cast<std::size_t>(e.custodian_location)];
    }
  }
  return assemble_locations_top(f, per_label, with, without, n);
}

Distribution serial::license_property_distribution(const Facts& f) {
  std::array<std::uint64_t, kLicense + 1> c{};
  std::uint64_t n = 0;
  for (const auto& e : f.entries) {
    if (!e.has_availability) continue;
    ++n;
    if (e.license_properties == 0) ++c[kLicense];
    for (std::size_t p = 0; p < kLicense; ++p) {
      if (e.license_properties & (1u << p)) ++c[p];
    }
  }
  return assemble_license(n, c);
}

Distribution serial::pii_distribution(const Facts& f) {
  std::array<std::uint64_t, kPii + 1> c{};
  std::uint64_t n = 0;
  for (const auto& e : f.entries) {
    if (!e.has_availability) continue;
    ++n;
    ++c[e.pii == kNone ? kPii : e.pii];
  }
  return assemble_pii(n, c);
}

TagList serial::singleton_languages(const Facts& f, bool exclude_target_group_members) {
  std::vector<std::uint64_t> per_tag(f.tags.size(), 0);
  for (const auto& e : f.entries) {
    for (auto t : e.tags) ++per_tag[t];
  }
  return assemble_singletons(f, per_tag, exclude_target_group_members);
}

CrossTab serial::type_by_language_group(const Facts& f) {
  std::array<std::array<std::uint64_t, kTypes>, kGroups> c{};
  std::array<std::uint64_t, kTypes> totals{};
  for (const auto& e : f.entries) {
    ++totals[idx(e.rtype)];
    for (std::size_t g = 0; g < kGroups; ++g) {
      if (e.groups & (1u << g)) ++c[g][idx(e.rtype)];
    }
  }
  return assemble_crosstab(c, totals);
}

// Parallel kernels

Distribution type_distribution(const Facts& f) {
  std::uint64_t c[kTypes] = {};
  const auto n = ssize(f);
#pragma omp parallel for reduction(+ : c[:kTypes])
  for (std::int64_t i = 0; i < n; ++i) ++c[idx(f.entries[static_cast<std::size_t>(i)].rtype)];
  return assemble_types(f.entries.size(), std::to_array(c));
}

Distribution language_group_distribution(const Facts& f) {
  std::uint64_t c[kGroups + 1] = {};
  const auto n = ssize(f);
#pragma omp parallel for reduction(+ : c[:kGroups + 1])
  for (std::int64_t i = 0; i < n; ++i) {
    const auto groups = f.entries[static_cast<std::size_t>(i)].groups;
    for (std::size_t g = 0; g <= kGroups; ++g) c[g] += (groups >> g) & 1u;
  }
  return assemble_groups(f.entries.size(), std::to_array(c));
}

Distribution first_location_distribution(const Facts& f) {
  std::uint64_t c[kMacro + 1] = {};
  const auto n = ssize(f);
#pragma omp parallel for reduction(+ : c[:kMacro + 1])
  for (std::int64_t i = 0; i < n; ++i) ++c[f.entries[static_cast<std::size_t>(i)].first_macroarea];
  return assemble_macro("locations", f.entries.size(), std::to_array(c), PercentStyle::two_decimals);
}

Distribution language_by_region(const Facts& f, TargetGroup group) {
  std::uint64_t c[kMacro + 1] = {};
  std::uint64_t members = 0;
  const std::uint32_t bit = 1u << idx(group);
  const auto n = ssize(f);
#pragma omp parallel for reduction(+ : c[:kMacro + 1], members)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& e = f.entries[static_cast<std::size_t>(i)];
    if (!(e.groups & bit)) continue;
    ++members;
    c[kMacro] += e.macroareas == 0 ? 1 : 0;
    for (std::size_t m = 0; m < kMacro; ++m) c[m] += (e.macroareas >> m) & 1u;
  }
  return assemble_macro("language_by_region." + std::string(langtag::to_string(group)), members,
                        std::to_array(c), PercentStyle::none);
}

Distribution custodian_type_distribution(const Facts& f) {
  std::uint64_t c[kCustodianTypes + 1] = {};
  const auto n = ssize(f);
#pragma omp parallel for reduction(+ : c[:kCustodianTypes + 1])
  for (std::int64_t i = 0; i < n; ++i) {
    const auto t = f.entries[static_cast<std::size_t>(i)].custodian_type;
    ++c[t == kNone ? kCustodianTypes : t];
  }
  return assemble_custodian_types(f.entries.size(), std::to_array(c));
}

Distribution custodian_location_top(const Facts& f, std::size_t top) {
  const std::size_t labels = f.custodian_labels.size();
  std::vector<std::uint64_t> per_label(labels, 0);
  std::uint64_t with = 0;
  std::uint64_t without = 0;
  const auto n = ssize(f);
#pragma omp parallel reduction(+ : with, without)
  {
    std::vector<std::uint64_t> local(labels, 0);
#pragma omp for nowait
    for (std::int64_t i = 0; i < n; ++i) {
      const auto loc = f.entries[static_cast<std::size_t>(i)].custodian_location;
      if (loc < 0) {
        ++without;
      } else {
        ++with;
        ++local[static_cast<std::size_t>(loc)];
      }
    }
#pragma omp critical(custodian_location_merge)
    for (std::size_t k = 0; k < labels; ++k) per_label[k] += local[k];
  }
  return assemble_locations_top(f, per_label, with, without, top);
}

Distribution license_property_distribution(const Facts& f) {
  std::uint64_t c[kLicense + 1] = {};
  std::uint64_t holders = 0;
  const auto n = ssize(f);
#pragma omp parallel for reduction(+ : c[:kLicense + 1], holders)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& e = f.entries[static_cast<std::size_t>(i)];
    if (!e.has_availability) continue;
    ++holders;
    c[kLicense] += e.license_properties == 0 ? 1 : 0;
    for (std::size_t p = 0; p < kLicense; ++p) c[p] += (e.license_properties >> p) & 1u;
  }
  return assemble_license(holders, std::to_array(c));
}

Distribution pii_distribution(const Facts& f) {
  std::uint64_t c[kPii + 1] = {};
  std::uint64_t holders = 0;
  const auto n = ssize(f);
#pragma omp parallel for reduction(+ : c[:kPii + 1], holders)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& e = f.entries[static_cast<std::size_t>(i)];
    if (!e.has_availability) continue;
    ++holders;
    ++c[e.pii == kNone ? kPii : e.pii];
  }
  return assemble_pii(holders, std::to_array(c));
}

TagList singleton_languages(const Facts& f, bool exclude_target_group_members) {
  const std::size_t tags = f.tags.size();
  std::vector<std::uint64_t> per_tag(tags, 0);
  const auto n = ssize(f);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(tags, 0);
#pragma omp for nowait
    for (std::int64_t i = 0; i < n; ++i) {
      for (auto t : f.entries[static_cast<std::size_t>(i)].tags) ++local[t];
    }
#pragma omp critical(singleton_merge)
    for (std::size_t k = 0; k < tags; ++k) per_tag[k] += local[k];
  }
  return assemble_singletons(f, per_tag, exclude_target_group_members);
}

CrossTab type_by_language_group(const Facts& f) {
  std::uint64_t c[kGroups * kTypes] = {};
  std::uint64_t totals[kTypes] = {};
  const auto n = ssize(f);
#pragma omp parallel for reduction(+ : c[:kGroups * kTypes], totals[:kTypes])
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& e = f.entries[static_cast<std::size_t>(i)];
    const auto t = idx(e.rtype);
    ++totals[t];
    for (std::size_t g = 0; g < kGroups; ++g) c[g * kTypes + t] += (e.groups >> g) & 1u;
  }
  std::array<std::array<std::uint64_t, kTypes>, kGroups> grid{};
  for (std::size_t g = 0; g < kGroups; ++g) {
    for (std::size_t t = 0; t < kTypes; ++t) grid[g][t] = c[g * kTypes + t];
  }
  return assemble_crosstab(grid, std::to_array(totals));
}

}  // namespace catalogue::analytics
