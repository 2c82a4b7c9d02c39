#include "catalogue/entry_json.hpp"

#include <algorithm>
#include <initializer_list>

namespace catalogue {
namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& why) {
  throw Error(ErrorKind::parse_error, path + ": " + why, path);
}

std::string join_path(const std::string& base, std::string_view key) {
  return base.empty() ? std::string(key) : base + "." + std::string(key);
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) parse_fail(path, "expected a string");
  return j.get<std::string>();
}

template <class E>
E as_enum(const Json& j, const std::string& path) {
  const std::string s = as_string(j, path);
  auto v = vocab_parse<E>(s);
  if (!v) parse_fail(path, "unknown value '" + s + "'");
  return *v;
}

template <class E>
OpenChoice<E> as_open(const Json& j, const std::string& path) {
  if (j.is_object()) {
    if (j.size() != 1 || !j.contains("other")) {
      parse_fail(path, "free-response answers are written as {\"other\": text}");
    }
    std::string text = as_string(j.at("other"), join_path(path, "other"));
    if (text.empty()) parse_fail(join_path(path, "other"), "free-response text is empty");
    return OpenChoice<E>::other(std::move(text));
  }
  const E value = as_enum<E>(j, path);
  if (value == E::other) parse_fail(path, "'other' needs a free-response text");
  return OpenChoice<E>{value, {}};
}

template <class E>
Json open_to_json(const OpenChoice<E>& c) {
  if (c.value == E::other) return Json{{"other", c.other_text}};
  return std::string(vocab_id(c.value));
}

template <class E>
std::set<E> as_enum_set(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
  std::set<E> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!out.insert(as_enum<E>(j[i], index_path(path, i))).second) {
      parse_fail(index_path(path, i), "duplicate value");
    }
  }
  return out;
}

template <class E>
Json enum_set_to_json(const std::set<E>& s) {
  Json arr = Json::array();
  for (E v : s) arr.push_back(std::string(vocab_id(v)));
  return arr;
}

std::vector<std::string> as_string_list(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], index_path(path, i)));
  return out;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) parse_fail(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -1'000'000 || v > 1'000'000) parse_fail(path, "integer out of range");
  return static_cast<int>(v);
}

/// Field access on one JSON object with unknown-key rejection.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path, std::initializer_list<std::string_view> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) parse_fail(path_.empty() ? "$" : path_, "expected an object");
    for (const auto& [key, value] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        parse_fail(join_path(path_, key), "unknown field");
      }
    }
  }

  std::string path(std::string_view key) const { return join_path(path_, key); }

  const Json* find(std::string_view key) const {
    const auto it = j_.find(std::string(key));
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const Json& req(std::string_view key) const {
    const Json* v = find(key);
    if (v == nullptr) parse_fail(path(key), "required field missing");
    return *v;
  }

  std::string req_string(std::string_view key) const { return as_string(req(key), path(key)); }

  std::optional<std::string> opt_string(std::string_view key) const {
    const Json* v = find(key);
    if (v == nullptr) return std::nullopt;
    return as_string(*v, path(key));
  }

  template <class E>
  E req_enum(std::string_view key) const {
    return as_enum<E>(req(key), path(key));
  }

  template <class E>
  std::optional<E> opt_enum(std::string_view key) const {
    const Json* v = find(key);
    if (v == nullptr) return std::nullopt;
    return as_enum<E>(*v, path(key));
  }

  template <class E>
  std::optional<OpenChoice<E>> opt_open(std::string_view key) const {
    const Json* v = find(key);
    if (v == nullptr) return std::nullopt;
    return as_open<E>(*v, path(key));
  }

  std::vector<std::string> string_list(std::string_view key) const {
    const Json* v = find(key);
    if (v == nullptr) return {};
    return as_string_list(*v, path(key));
  }

 private:
  const Json& j_;
  std::string path_;
};

void put_opt(Json& obj, const char* key, const std::optional<std::string>& v) {
  if (v) obj[key] = *v;
}

// general

Json general_to_json(const GeneralInfo& g) {
  Json j{{"uid", g.uid}, {"name", g.name}, {"description", g.description}};
  put_opt(j, "homepage", g.homepage);
  return j;
}

GeneralInfo general_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path, {"uid", "name", "homepage", "description"});
  GeneralInfo g;
  g.uid = r.req_string("uid");
  g.name = r.req_string("name");
  g.homepage = r.opt_string("homepage");
  g.description = r.req_string("description");
  return g;
}

// languages

Json selection_to_json(const LanguageSelection& s) {
  Json j = Json::object();
  if (s.group) j["group"] = std::string(langtag::to_string(*s.group));
  if (s.tag) j["tag"] = s.tag->str();
  put_opt(j, "variety_comment", s.variety_comment);
  return j;
}

LanguageSelection selection_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path, {"group", "tag", "variety_comment"});
  LanguageSelection s;
  if (auto g = r.opt_string("group")) {
    s.group = langtag::target_group_from_string(*g);
    if (!s.group) parse_fail(r.path("group"), "unknown target group '" + *g + "'");
  }
  if (auto t = r.opt_string("tag")) {
    try {
      s.tag = langtag::parse_tag(*t);
    } catch (const langtag::TagParseError& e) {
      parse_fail(r.path("tag"), e.what());
    }
  }
  s.variety_comment = r.opt_string("variety_comment");
  return s;
}

Json languages_to_json(const std::vector<LanguageSelection>& v) {
  Json arr = Json::array();
  for (const auto& s : v) arr.push_back(selection_to_json(s));
  return arr;
}

std::vector<LanguageSelection> languages_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
  std::vector<LanguageSelection> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(selection_from_json(j[i], index_path(path, i)));
  }
  return out;
}

// locations

GeoLocation location_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) return geo::resolve_location(j.get<std::string>());
  ObjectReader r(j, path, {"raw", "level", "macroarea", "country_code"});
  GeoLocation loc;
  loc.raw = r.req_string("raw");
  const std::string level = r.req_string("level");
  const auto lv = geo::location_level_from_string(level);
  if (!lv) parse_fail(r.path("level"), "unknown value '" + level + "'");
  loc.level = *lv;
  if (auto m = r.opt_string("macroarea")) {
    loc.macroarea = geo::macroarea_from_string(*m);
    if (!loc.macroarea) parse_fail(r.path("macroarea"), "unknown value '" + *m + "'");
  }
  loc.country_code = r.opt_string("country_code").value_or("");
  return loc;
}

Json locations_to_json(const std::vector<GeoLocation>& v) {
  Json arr = Json::array();
  for (const auto& l : v) arr.push_back(location_to_json(l));
  return arr;
}

std::vector<GeoLocation> locations_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
  std::vector<GeoLocation> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(location_from_json(j[i], index_path(path, i)));
  }
  return out;
}

// custodian

Json custodian_to_json(const Custodian& c) {
  Json j = Json::object();
  put_opt(j, "link_uid", c.link_uid);
  put_opt(j, "name", c.name);
  if (c.ctype) j["type"] = std::string(vocab_id(*c.ctype));
  if (c.location) j["location"] = location_to_json(*c.location);
  put_opt(j, "contact", c.contact);
  return j;
}

Custodian custodian_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path, {"link_uid", "name", "type", "location", "contact"});
  Custodian c;
  c.link_uid = r.opt_string("link_uid");
  c.name = r.opt_string("name");
  c.ctype = r.opt_enum<CustodianType>("type");
  if (const Json* loc = r.find("location")) c.location = location_from_json(*loc, r.path("location"));
  c.contact = r.opt_string("contact");
  return c;
}

// availability

LicenseInfo license_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path,
                 {"has_explicit_terms", "properties", "named_licenses", "license_text",
                  "usability_assessment"});
  LicenseInfo l;
  l.has_explicit_terms = r.req_enum<ExplicitTerms>("has_explicit_terms");
  if (const Json* p = r.find("properties")) {
    l.properties = as_enum_set<LicenseProperty>(*p, r.path("properties"));
  }
  l.named_licenses = r.string_list("named_licenses");
  l.license_text = r.opt_string("license_text");
  l.usability_assessment = r.opt_string("usability_assessment");
  return l;
}

Json pii_to_json(const PIIAssessment& p) {
  Json likelihood = Json::object();
  Json kinds = Json::object();
  for (PiiCategory c : vocab_values<PiiCategory>()) {
    const std::string key(vocab_id(c));
    likelihood[key] = std::string(vocab_id(p.likelihood_of(c)));
    Json arr = Json::array();
    for (const auto& k : p.kinds_of(c)) arr.push_back(open_to_json(k));
    kinds[key] = std::move(arr);
  }
  Json j{{"likelihood", std::move(likelihood)}, {"kinds", std::move(kinds)}};
  if (p.contains) j["contains"] = std::string(vocab_id(*p.contains));
  if (p.no_pii_justification) j["no_pii_justification"] = open_to_json(*p.no_pii_justification);
  return j;
}

PIIAssessment pii_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path, {"contains", "likelihood", "kinds", "no_pii_justification"});
  PIIAssessment p;
  p.contains = r.opt_enum<PiiContains>("contains");
  if (const Json* lj = r.find("likelihood")) {
    ObjectReader lr(*lj, r.path("likelihood"), {"general", "numeric", "sensitive"});
    for (PiiCategory c : vocab_values<PiiCategory>()) {
      if (auto v = lr.opt_enum<PiiLikelihood>(vocab_id(c))) p.likelihood_of(c) = *v;
    }
  }
  if (const Json* kj = r.find("kinds")) {
    ObjectReader kr(*kj, r.path("kinds"), {"general", "numeric", "sensitive"});
    for (PiiCategory c : vocab_values<PiiCategory>()) {
      const Json* arr = kr.find(vocab_id(c));
      if (arr == nullptr) continue;
      const std::string cpath = kr.path(vocab_id(c));
      if (!arr->is_array()) parse_fail(cpath, "expected an array");
      for (std::size_t i = 0; i < arr->size(); ++i) {
        const std::string ipath = index_path(cpath, i);
        const auto kind = as_open<PiiKind>((*arr)[i], ipath);
        const auto owner = category_of(kind.value);
        if (owner && *owner != c) {
          parse_fail(ipath, "'" + std::string(vocab_id(kind.value)) + "' is not a " +
                                std::string(vocab_id(c)) + " PII kind");
        }
        if (!p.kinds_of(c).insert(kind).second) parse_fail(ipath, "duplicate value");
      }
    }
  }
  p.no_pii_justification = r.opt_open<NoPiiJustification>("no_pii_justification");
  return p;
}

Json availability_to_json(const Availability& a) {
  Json j{{"procurement", std::string(vocab_id(a.procurement))},
         {"license", license_to_json(a.license)},
         {"pii", pii_to_json(a.pii)}};
  put_opt(j, "download_url", a.download_url);
  put_opt(j, "contact", a.contact);
  return j;
}

Availability availability_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path, {"procurement", "download_url", "contact", "license", "pii"});
  Availability a;
  a.procurement = r.req_enum<Procurement>("procurement");
  a.download_url = r.opt_string("download_url");
  a.contact = r.opt_string("contact");
  a.license = license_from_json(r.req("license"), r.path("license"));
  a.pii = pii_from_json(r.req("pii"), r.path("pii"));
  return a;
}

// source type and dataset sources

Json source_type_to_json(const PrimarySourceType& s) {
  Json j{{"kind", open_to_json(s.kind)}};
  if (s.collection_type) j["collection_type"] = open_to_json(*s.collection_type);
  if (s.website_type) j["website_type"] = open_to_json(*s.website_type);
  return j;
}

PrimarySourceType source_type_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path, {"kind", "collection_type", "website_type"});
  PrimarySourceType s;
  s.kind = as_open<SourceKind>(r.req("kind"), r.path("kind"));
  s.collection_type = r.opt_open<CollectionType>("collection_type");
  s.website_type = r.opt_open<WebsiteType>("website_type");
  return s;
}

Json dataset_sources_to_json(const DatasetSources& d) {
  Json types = Json::array();
  for (const auto& t : d.source_types) types.push_back(source_type_to_json(t));
  Json j{{"originality", std::string(vocab_id(d.originality))},
         {"linked_primary_uids", d.linked_primary_uids},
         {"source_types", std::move(types)}};
  if (d.sources_investigable) {
    j["sources_investigable"] = std::string(vocab_id(*d.sources_investigable));
  }
  if (d.source_license) j["source_license"] = license_to_json(*d.source_license);
  return j;
}

DatasetSources dataset_sources_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path,
                 {"originality", "sources_investigable", "linked_primary_uids", "source_types",
                  "source_license"});
  DatasetSources d;
  d.originality = r.req_enum<Originality>("originality");
  d.sources_investigable = r.opt_enum<SourcesInvestigable>("sources_investigable");
  d.linked_primary_uids = r.string_list("linked_primary_uids");
  if (const Json* st = r.find("source_types")) {
    if (!st->is_array()) parse_fail(r.path("source_types"), "expected an array");
    for (std::size_t i = 0; i < st->size(); ++i) {
      d.source_types.push_back(source_type_from_json((*st)[i], index_path(r.path("source_types"), i)));
    }
  }
  if (const Json* sl = r.find("source_license")) {
    d.source_license = license_from_json(*sl, r.path("source_license"));
  }
  return d;
}

// media

Json media_to_json(const MediaSpec& m) {
  Json j{{"media", enum_set_to_json(m.media)},
         {"size_unit", open_to_json(m.size_unit)},
         {"instance_count_bucket", m.instance_count_bucket.exponent},
         {"words_per_instance_bucket", m.words_per_instance_bucket.exponent}};
  put_opt(j, "format_note", m.format_note);
  if (m.transcribed_from) j["transcribed_from"] = std::string(vocab_id(*m.transcribed_from));
  return j;
}

MediaSpec media_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path,
                 {"media", "format_note", "transcribed_from", "size_unit", "instance_count_bucket",
                  "words_per_instance_bucket"});
  MediaSpec m;
  m.media = as_enum_set<MediaType>(r.req("media"), r.path("media"));
  m.format_note = r.opt_string("format_note");
  m.transcribed_from = r.opt_enum<TranscribedFrom>("transcribed_from");
  m.size_unit = as_open<SizeUnit>(r.req("size_unit"), r.path("size_unit"));
  m.instance_count_bucket.exponent =
      as_int(r.req("instance_count_bucket"), r.path("instance_count_bucket"));
  m.words_per_instance_bucket.exponent =
      as_int(r.req("words_per_instance_bucket"), r.path("words_per_instance_bucket"));
  return m;
}

Json provenance_to_json(const Provenance& p) {
  Json j{{"submitter", person_to_json(p.submitter)}};
  put_opt(j, "saved_at", p.saved_at);
  return j;
}

Provenance provenance_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path, {"submitter", "saved_at"});
  Provenance p;
  p.submitter = person_from_json(r.req("submitter"), r.path("submitter"));
  p.saved_at = r.opt_string("saved_at");
  return p;
}

void set_section(CatalogueEntry& e, Section s, const Json& payload) {
  const std::string path(section_name(s));
  const bool clear = payload.is_null();
  switch (s) {
    case Section::general:
      if (clear) parse_fail(path, "section cannot be removed");
      e.general = general_from_json(payload, path);
      return;
    case Section::languages:
      if (clear) parse_fail(path, "section cannot be removed");
      e.languages = languages_from_json(payload, path);
      return;
    case Section::locations:
      e.locations = clear ? std::vector<GeoLocation>{} : locations_from_json(payload, path);
      return;
    case Section::custodian:
      if (clear) e.custodian.reset(); else e.custodian = custodian_from_json(payload, path);
      return;
    case Section::availability:
      if (clear) e.availability.reset(); else e.availability = availability_from_json(payload, path);
      return;
    case Section::source_type:
      if (clear) e.source_type.reset(); else e.source_type = source_type_from_json(payload, path);
      return;
    case Section::dataset_sources:
      if (clear) e.dataset_sources.reset();
      else e.dataset_sources = dataset_sources_from_json(payload, path);
      return;
    case Section::media:
      if (clear) e.media.reset(); else e.media = media_from_json(payload, path);
      return;
  }
}

}  // namespace

std::string_view section_name(Section s) { return vocab_id(s); }

Section section_from_name(std::string_view name) {
  auto s = vocab_parse<Section>(name);
  if (!s) throw Error(ErrorKind::parse_error, "unknown section '" + std::string(name) + "'", "section");
  return *s;
}

Json location_to_json(const GeoLocation& loc) {
  Json j{{"raw", loc.raw}, {"level", std::string(geo::to_string(loc.level))}};
  if (loc.macroarea) j["macroarea"] = std::string(geo::to_string(*loc.macroarea));
  if (!loc.country_code.empty()) j["country_code"] = loc.country_code;
  return j;
}

Json license_to_json(const LicenseInfo& l) {
  Json j{{"has_explicit_terms", std::string(vocab_id(l.has_explicit_terms))},
         {"properties", enum_set_to_json(l.properties)},
         {"named_licenses", l.named_licenses}};
  put_opt(j, "license_text", l.license_text);
  put_opt(j, "usability_assessment", l.usability_assessment);
  return j;
}

Json person_to_json(const Person& p) { return Json{{"name", p.name}, {"email", p.email}}; }

Person person_from_json(const Json& j, const std::string& path) {
  ObjectReader r(j, path, {"name", "email"});
  return Person{r.req_string("name"), r.req_string("email")};
}

Json section_to_json(const CatalogueEntry& e, Section s) {
  switch (s) {
    case Section::general: return general_to_json(e.general);
    case Section::languages: return languages_to_json(e.languages);
    case Section::locations: return locations_to_json(e.locations);
    case Section::custodian: return e.custodian ? custodian_to_json(*e.custodian) : Json();
    case Section::availability:
      return e.availability ? availability_to_json(*e.availability) : Json();
    case Section::source_type: return e.source_type ? source_type_to_json(*e.source_type) : Json();
    case Section::dataset_sources:
      return e.dataset_sources ? dataset_sources_to_json(*e.dataset_sources) : Json();
    case Section::media: return e.media ? media_to_json(*e.media) : Json();
  }
  return Json();
}

Json entry_to_json(const CatalogueEntry& e) {
  Json j{{"rtype", std::string(vocab_id(e.rtype))},
         {"general", general_to_json(e.general)},
         {"languages", languages_to_json(e.languages)},
         {"locations", locations_to_json(e.locations)},
         {"provenance", provenance_to_json(e.provenance)}};
  for (Section s : {Section::custodian, Section::availability, Section::source_type,
                    Section::dataset_sources, Section::media}) {
    if (e.has_section(s)) j[std::string(section_name(s))] = section_to_json(e, s);
  }
  return j;
}

CatalogueEntry entry_from_json_value(const Json& j) {
  ObjectReader r(j, "",
                 {"rtype", "general", "languages", "locations", "custodian", "availability",
                  "source_type", "dataset_sources", "media", "provenance"});
  CatalogueEntry e;
  e.rtype = r.req_enum<ResourceType>("rtype");
  e.general = general_from_json(r.req("general"), "general");
  e.languages = languages_from_json(r.req("languages"), "languages");
  if (const Json* l = r.find("locations")) e.locations = locations_from_json(*l, "locations");
  if (const Json* c = r.find("custodian")) e.custodian = custodian_from_json(*c, "custodian");
  if (const Json* a = r.find("availability")) e.availability = availability_from_json(*a, "availability");
  if (const Json* s = r.find("source_type")) e.source_type = source_type_from_json(*s, "source_type");
  if (const Json* d = r.find("dataset_sources")) {
    e.dataset_sources = dataset_sources_from_json(*d, "dataset_sources");
  }
  if (const Json* m = r.find("media")) e.media = media_from_json(*m, "media");
  e.provenance = provenance_from_json(r.req("provenance"), "provenance");
  return e;
}

CatalogueEntry entry_from_json(std::string_view bytes) {
  Json j;
  try {
    j = Json::parse(bytes.begin(), bytes.end());
  } catch (const Json::parse_error& err) {
    throw Error(ErrorKind::parse_error, std::string("malformed JSON: ") + err.what(), "$");
  }
  return entry_from_json_value(j);
}

std::string canonical_dump(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::strict);
}

std::string entry_to_canonical_json(const CatalogueEntry& e) {
  return canonical_dump(entry_to_json(e));
}

CatalogueEntry apply_section_edit(const CatalogueEntry& entry, Section section,
                                  const Json& payload) {
  if (!is_applicable(entry.rtype, section)) {
    throw Error(ErrorKind::section_not_applicable,
                "section '" + std::string(section_name(section)) + "' does not apply to " +
                    std::string(vocab_id(entry.rtype)) + " entries",
                std::string(section_name(section)));
  }
  CatalogueEntry out = entry;
  set_section(out, section, payload);
  return out;
}

}  // namespace catalogue

namespace catalogue {

Json report_to_json(const ValidationReport& report) {
  Json out = Json::array();
  for (const auto& v : report.violations) {
    out.push_back({{"rule", v.rule},
                   {"field_path", v.field_path},
                   {"detail", v.detail},
                   {"severity", v.severity == Severity::error ? "error" : "warning"}});
  }
  return {{"accepted", report.accepted()}, {"violations", std::move(out)}};
}

}  // namespace catalogue
