#include "catalogue/service.hpp"

#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>

#include "catalogue/analytics.hpp"
#include "catalogue/geo.hpp"
#include "catalogue/langtag.hpp"
#include "catalogue/validate.hpp"
#include "text_util.hpp"

namespace catalogue::service {
namespace {

using Query = std::multimap<std::string, std::string>;

constexpr std::array<std::string_view, 10> kAnalytics = {
    "types",          "languages",           "first-locations", "language-regions",
    "custodian-types", "custodian-locations", "licenses",        "pii",
    "singletons",     "type-by-language-group"};

constexpr std::size_t kDefaultLimit = 100;
constexpr std::size_t kDefaultTop = 10;

Error bad_param(const std::string& name, const std::string& detail) {
  return Error(ErrorKind::parse_error, detail, "query." + name);
}

std::optional<std::string> param(const Query& q, const std::string& name) {
  const auto it = q.find(name);
  if (it == q.end()) return std::nullopt;
  return it->second;
}

std::size_t size_param(const Query& q, const std::string& name, std::size_t fallback) {
  const auto v = param(q, name);
  if (!v) return fallback;
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) {
    throw bad_param(name, "expected a non-negative integer");
  }
  return out;
}

bool bool_param(const Query& q, const std::string& name) {
  const auto v = param(q, name);
  if (!v || *v == "false" || *v == "0") return false;
  if (v->empty() || *v == "true" || *v == "1") return true;
  throw bad_param(name, "expected true or false");
}

template <class E>
std::optional<E> vocab_param(const Query& q, const std::string& name) {
  const auto v = param(q, name);
  if (!v) return std::nullopt;
  if (auto e = vocab_parse<E>(*v)) return e;
  throw bad_param(name, "unknown value '" + *v + "'");
}

Response json_response(int status, const Json& body) {
  Response r;
  r.status = status;
  r.body = canonical_dump(body);
  return r;
}

Response error_response(const ApiError& e) { return json_response(e.status, e.to_json()); }

Response method_not_allowed(const Request& req) {
  ApiError e{405, "method-not-allowed", req.method + " is not supported on " + req.path, "", {}};
  return error_response(e);
}

std::vector<std::string> segments(std::string_view path) {
  std::vector<std::string> out;
  for (auto part : util::split(path, '/')) {
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

Json parse_body(const Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::parse_error, std::string("invalid JSON body: ") + e.what(), "$");
  }
}

Person person_param(const Json& body, const std::string& key) {
  if (!body.is_object() || !body.contains(key)) {
    throw Error(ErrorKind::parse_error, "missing '" + key + "'", key);
  }
  return person_from_json(body.at(key), key);
}

Person import_author(const Query& q) {
  return Person{param(q, "author_name").value_or("catalogue import"),
                param(q, "author_email").value_or("")};
}

Json version_summary(const store::EntryVersion& v) {
  return {{"version", v.version_no}, {"saved_at", v.saved_at}, {"author", person_to_json(v.author)}};
}

Json save_json(const store::SaveResult& r) {
  Json j{{"uid", r.uid}, {"version", r.version_no}};
  if (!r.report.violations.empty()) j["warnings"] = report_to_json(r.report)["violations"];
  return j;
}

Json import_json_body(const store::ImportResult& r) {
  Json saved = Json::array();
  for (const auto& s : r.saved) saved.push_back(save_json(s));
  Json errors = Json::array();
  for (const auto& e : r.errors) {
    errors.push_back({{"row", e.row}, {"rule", e.rule}, {"field_path", e.field_path}, {"detail", e.detail}});
  }
  return {{"saved", std::move(saved)}, {"errors", std::move(errors)}};
}

Json page(const Query& q, std::size_t total, const std::function<Json(std::size_t)>& item) {
  const std::size_t offset = size_param(q, "offset", 0);
  const std::size_t limit = size_param(q, "limit", kDefaultLimit);
  Json items = Json::array();
  for (std::size_t i = offset; i < total && i - offset < limit; ++i) items.push_back(item(i));
  return {{"total", total}, {"offset", offset}, {"limit", limit}, {"items", std::move(items)}};
}

Json schema_json() {
  Json types = Json::array();
  for (ResourceType t : vocab_values<ResourceType>()) {
    Json sections = Json::array();
    for (Section s : applicable_sections(t)) sections.push_back(section_name(s));
    types.push_back({{"id", vocab_id(t)}, {"label", display_name(t)}, {"sections", std::move(sections)}});
  }
  auto ids = [](auto values) {
    Json a = Json::array();
    for (auto v : values) a.push_back(vocab_id(v));
    return a;
  };
  Json groups = Json::array();
  for (TargetGroup g : langtag::kAllTargetGroups) {
    groups.push_back({{"id", langtag::to_string(g)}, {"label", langtag::display_name(g)}});
  }
  Json areas = Json::array();
  for (geo::Macroarea m : geo::kAllMacroareas) {
    areas.push_back({{"id", geo::to_string(m)}, {"label", geo::display_name(m)}});
  }
  Json rules = Json::array();
  for (auto r : rules::all()) rules.push_back(r);
  return {
      {"resource_types", std::move(types)},
      {"target_groups", std::move(groups)},
      {"macroareas", std::move(areas)},
      {"rules", std::move(rules)},
      {"vocabularies",
       {{"custodian_type", ids(vocab_values<CustodianType>())},
        {"procurement", ids(vocab_values<Procurement>())},
        {"explicit_terms", ids(vocab_values<ExplicitTerms>())},
        {"license_property", ids(vocab_values<LicenseProperty>())},
        {"pii_contains", ids(vocab_values<PiiContains>())},
        {"pii_category", ids(vocab_values<PiiCategory>())},
        {"pii_likelihood", ids(vocab_values<PiiLikelihood>())},
        {"pii_kind", ids(vocab_values<PiiKind>())},
        {"no_pii_justification", ids(vocab_values<NoPiiJustification>())},
        {"source_kind", ids(vocab_values<SourceKind>())},
        {"collection_type", ids(vocab_values<CollectionType>())},
        {"website_type", ids(vocab_values<WebsiteType>())},
        {"originality", ids(vocab_values<Originality>())},
        {"sources_investigable", ids(vocab_values<SourcesInvestigable>())},
        {"media_type", ids(vocab_values<MediaType>())},
        {"transcribed_from", ids(vocab_values<TranscribedFrom>())},
        {"size_unit", ids(vocab_values<SizeUnit>())},
        {"section", ids(vocab_values<Section>())}}},
  };
}

Json gazetteer_json() {
  Json out = Json::array();
  for (const auto& r : geo::Gazetteer::builtin().records()) {
    Json rec{{"name", r.name}, {"level", geo::to_string(r.level)}};
    if (!r.country_code.empty()) rec["country_code"] = r.country_code;
    if (r.level != geo::LocationLevel::worldwide) rec["macroarea"] = geo::to_string(r.macroarea);
    out.push_back(std::move(rec));
  }
  return out;
}

Json analytics_json(const store::Store& store, const std::string& name, const Query& q) {
  using namespace analytics;
  const auto snap = store.snapshot();
  const Facts f = build_facts(*snap, filter_from_query(q));
  if (name == "types") return to_json(type_distribution(f));
  if (name == "languages") return to_json(language_group_distribution(f));
  if (name == "first-locations") return to_json(first_location_distribution(f));
  if (name == "language-regions") {
    const auto g = param(q, "group");
    if (!g) throw bad_param("group", "language-regions needs a group");
    const auto group = langtag::target_group_from_string(*g);
    if (!group) throw bad_param("group", "unknown target group '" + *g + "'");
    return to_json(language_by_region(f, *group));
  }
  if (name == "custodian-types") return to_json(custodian_type_distribution(f));
  if (name == "custodian-locations") {
    return to_json(custodian_location_top(f, size_param(q, "top", kDefaultTop)));
  }
  if (name == "licenses") return to_json(license_property_distribution(f));
  if (name == "pii") return to_json(pii_distribution(f));
  if (name == "singletons") {
    return to_json(singleton_languages(f, bool_param(q, "exclude_target_groups")));
  }
  if (name == "type-by-language-group") return to_json(type_by_language_group(f));
  throw Error(ErrorKind::not_found, "no analytics table '" + name + "'", "name");
}

}  // namespace

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse_error:
    case ErrorKind::section_not_applicable:
    case ErrorKind::validation_failed:
    case ErrorKind::malformed_csv:
    case ErrorKind::self_validation:
      return 400;
    case ErrorKind::not_found: return 404;
    case ErrorKind::conflicting_finalize: return 409;
    case ErrorKind::storage_io: return 500;
  }
  return 500;
}

ApiError api_error(const Error& e) {
  return ApiError{http_status(e.kind()), std::string(to_string(e.kind())), e.what(), e.field_path(),
                  e.report()};
}

Json ApiError::to_json() const {
  Json j{{"error", kind}, {"detail", detail}};
  if (!field_path.empty()) j["field_path"] = field_path;
  if (report) {
    j["violations"] = report_to_json(*report)["violations"];
    for (const auto& v : report->violations) {
      if (v.severity == Severity::error) {
        j["rule"] = v.rule;
        break;
      }
    }
  }
  return j;
}

Config load_config(const std::optional<std::filesystem::path>& path) {
  Config c;
  auto set_listen = [&](const std::string& listen) {
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorKind::parse_error, "listen must be host:port", "listen");
    c.host = listen.substr(0, colon);
    const std::string port = listen.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), c.port);
    if (ec != std::errc{} || ptr != port.data() + port.size() || c.port < 0 || c.port > 65535) {
      throw Error(ErrorKind::parse_error, "bad port in '" + listen + "'", "listen");
    }
  };
  if (path) {
    std::ifstream in(*path);
    if (!in) throw Error(ErrorKind::storage_io, "cannot read config " + path->string());
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::parse_error, path->string() + ": " + e.what(), "$");
    }
    if (!j.is_object()) throw Error(ErrorKind::parse_error, "config must be a JSON object", "$");
    try {
      for (const auto& [key, value] : j.items()) {
        if (key == "listen") {
          set_listen(value.get<std::string>());
        } else if (key == "data_dir") {
          c.data_dir = value.get<std::string>();
        } else if (key == "cors_origin") {
          c.cors_origin = value.get<std::string>();
        } else if (key == "forbid_self_validation") {
          c.forbid_self_validation = value.get<bool>();
        } else if (key == "threads") {
          c.threads = value.get<std::size_t>();
        } else {
          throw Error(ErrorKind::parse_error, "unknown config key '" + key + "'", key);
        }
      }
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::parse_error, std::string("config: ") + e.what(), "$");
    }
    if (c.data_dir.is_relative()) c.data_dir = path->parent_path() / c.data_dir;
  }
  if (const char* v = std::getenv("CATALOGUE_LISTEN"); v && *v) set_listen(v);
  if (const char* v = std::getenv("CATALOGUE_DATA_DIR"); v && *v) c.data_dir = v;
  if (const char* v = std::getenv("CATALOGUE_CORS_ORIGIN"); v) c.cors_origin = v;
  return c;
}

store::Filter filter_from_query(const Query& q) {
  store::Filter f;
  f.rtype = vocab_param<ResourceType>(q, "rtype");
  if (const auto g = param(q, "group")) {
    f.group = langtag::target_group_from_string(*g);
    if (!f.group) throw bad_param("group", "unknown target group '" + *g + "'");
  }
  if (const auto m = param(q, "macroarea")) {
    f.macroarea = geo::macroarea_from_string(*m);
    if (!f.macroarea) throw bad_param("macroarea", "unknown macroarea '" + *m + "'");
  }
  f.license_property = vocab_param<LicenseProperty>(q, "license");
  f.media = vocab_param<MediaType>(q, "media");
  f.custodian_type = vocab_param<CustodianType>(q, "custodian_type");
  f.pii_contains = vocab_param<PiiContains>(q, "pii");
  f.text = param(q, "q");
  return f;
}

std::span<const std::string_view> analytics_endpoints() { return kAnalytics; }

Api::Api(store::Store& store, review::Policy policy) : store_(store), desk_(store, policy) {}

Response Api::handle(const Request& req) {
  try {
    return dispatch(req);
  } catch (const Error& e) {
    return error_response(api_error(e));
  } catch (const std::exception& e) {
    return error_response(ApiError{500, "internal", e.what(), "", {}});
  }
}

Response Api::dispatch(const Request& req) {
  const auto seg = segments(req.path);
  const std::string& m = req.method;
  const std::size_t n = seg.size();
  auto not_found = [&]() -> Response {
    return error_response(ApiError{404, "not-found", "no route " + req.path, "", {}});
  };
  if (n == 0) return not_found();
  const std::string& root = seg[0];

  if (root == "health" && n == 1) {
    if (m != "GET") return method_not_allowed(req);
    return json_response(200, {{"status", "ok"}, {"entries", store_.snapshot()->size()}});
  }
  if (root == "openapi.json" && n == 1) {
    if (m != "GET") return method_not_allowed(req);
    return json_response(200, openapi());
  }
  if (root == "gazetteer" && n == 1) {
    if (m != "GET") return method_not_allowed(req);
    return json_response(200, gazetteer_json());
  }
  if (root == "schema") {
    if (n == 1) {
      if (m != "GET") return method_not_allowed(req);
      return json_response(200, schema_json());
    }
    if (n == 2 && seg[1] == "canonicalize") {
      if (m != "POST") return method_not_allowed(req);
      const CatalogueEntry e = entry_from_json(req.body);
      const auto snap = store_.snapshot();
      CatalogueIndex index = snap->index();
      index[e.uid()] = e.rtype;
      return json_response(200, {{"entry", entry_to_json(e)},
                                 {"canonical", entry_to_canonical_json(e)},
                                 {"report", report_to_json(validate_entry(e, index))}});
    }
    return not_found();
  }
  if (root == "export" && n == 1) {
    if (m != "GET") return method_not_allowed(req);
    Response r;
    r.body = store_.export_catalogue();
    return r;
  }
  if (root == "import" && n == 2) {
    if (m != "POST") return method_not_allowed(req);
    if (seg[1] == "csv") return json_response(200, import_json_body(store_.import_csv(req.body, import_author(req.query))));
    if (seg[1] == "json") return json_response(200, import_json_body(store_.import_json(req.body, import_author(req.query))));
    return not_found();
  }
  if (root == "analytics" && n == 2) {
    if (m != "GET") return method_not_allowed(req);
    return json_response(200, analytics_json(store_, seg[1], req.query));
  }
  if (root != "entries") return not_found();

  if (n == 1) {
    if (m == "POST") {
      const CatalogueEntry e = entry_from_json(req.body);
      const auto saved = store_.save_entry(e, e.provenance.submitter);
      Response r = json_response(201, save_json(saved));
      r.location = "/entries/" + saved.uid;
      return r;
    }
    if (m != "GET") return method_not_allowed(req);
    const auto snap = store_.snapshot();
    const auto uids = store_.search(filter_from_query(req.query));
    return json_response(200, page(req.query, uids.size(), [&](std::size_t i) {
      const store::UidState* st = snap->find(uids[i]);
      if (st == nullptr) return Json{{"uid", uids[i]}};
      return Json{{"uid", uids[i]},
                  {"rtype", vocab_id(st->latest.rtype)},
                  {"name", st->latest.general.name},
                  {"description", st->latest.general.description},
                  {"version", st->latest_version().version_no},
                  {"validated", st->validated()},
                  {"latest_validated", st->latest_validated()}};
    }));
  }

  const std::string& uid = seg[1];
  if (n == 2) {
    if (m != "GET") return method_not_allowed(req);
    const auto snap = store_.snapshot();
    const CatalogueEntry* e = snap->entry(uid);
    if (e == nullptr) throw Error(ErrorKind::not_found, "no entry with uid '" + uid + "'", "uid");
    return json_response(200, entry_to_json(*e));
  }
  const std::string& sub = seg[2];
  if (sub == "versions") {
    if (m != "GET") return method_not_allowed(req);
    if (n == 3) {
      const auto versions = store_.list_versions(uid);
      Json body = page(req.query, versions.size(),
                       [&](std::size_t i) { return version_summary(versions[i]); });
      body["uid"] = uid;
      return json_response(200, body);
    }
    if (n == 4) {
      int no = 0;
      const auto [ptr, ec] = std::from_chars(seg[3].data(), seg[3].data() + seg[3].size(), no);
      if (ec != std::errc{} || ptr != seg[3].data() + seg[3].size()) {
        throw Error(ErrorKind::not_found, "no version '" + seg[3] + "'", "version");
      }
      const auto v = store_.version(uid, no);
      Json body = version_summary(v);
      body["uid"] = v.uid;
      body["entry"] = Json::parse(v.payload);
      return json_response(200, body);
    }
    return not_found();
  }
  if (sub == "status" && n == 3) {
    if (m != "GET") return method_not_allowed(req);
    return json_response(200, review::status_to_json(review::status(store_, uid)));
  }
  if (sub != "validations") return not_found();

  if (n == 3) {
    if (m == "POST") {
      const Json body = parse_body(req);
      const auto s = desk_.begin(uid, person_param(body, "validator"));
      Response r = json_response(201, review::session_to_json(s));
      r.location = "/entries/" + uid + "/validations/" + s.id;
      return r;
    }
    if (m != "GET") return method_not_allowed(req);
    const auto records = store_.validation_records(uid);
    Json body = page(req.query, records.size(),
                     [&](std::size_t i) { return store::record_to_json(records[i]); });
    body["uid"] = uid;
    return json_response(200, body);
  }

  const std::string& sid = seg[3];
  auto session_for_uid = [&] {
    auto s = desk_.get(sid);
    if (s.uid != uid) {
      throw Error(ErrorKind::not_found, "no review session '" + sid + "' for '" + uid + "'", "session_id");
    }
    return s;
  };
  if (n == 4) {
    if (m != "GET") return method_not_allowed(req);
    return json_response(200, review::session_to_json(session_for_uid()));
  }
  if (n == 5 && seg[4] == "finalize") {
    if (m != "POST") return method_not_allowed(req);
    session_for_uid();
    return json_response(201, store::record_to_json(desk_.finalize(sid)));
  }
  if (n == 6 && seg[4] == "sections") {
    if (m != "PATCH") return method_not_allowed(req);
    session_for_uid();
    const Section section = section_from_name(seg[5]);
    std::optional<Json> edit;
    if (!util::trim(req.body).empty()) {
      const Json body = parse_body(req);
      if (!body.is_object()) throw Error(ErrorKind::parse_error, "expected an object", "$");
      if (body.contains("edit")) edit = body.at("edit");
    }
    return json_response(200, review::session_to_json(desk_.check(sid, section, edit)));
  }
  return not_found();
}

}  // namespace catalogue::service
