#include "catalogue/service.hpp"

namespace catalogue::service {
namespace {

Json ref(const std::string& name) { return {{"$ref", "#/components/schemas/" + name}}; }

Json json_content(const Json& schema) { return {{"application/json", {{"schema", schema}}}}; }

Json ok(const std::string& description, const Json& schema = Json::object()) {
  return {{"description", description}, {"content", json_content(schema)}};
}

Json error_responses(std::initializer_list<int> codes) {
  Json out = Json::object();
  for (int c : codes) {
    out[std::to_string(c)] = {{"description", c == 400   ? "Invalid request or failed validation"
                                              : c == 404 ? "Unknown uid, version, session or route"
                                              : c == 409 ? "Session already finalized"
                                                         : "Storage failure"},
                              {"content", json_content(ref("ApiError"))}};
  }
  return out;
}

Json query_param(const std::string& name, const std::string& description,
                 const std::string& type = "string") {
  return {{"name", name}, {"in", "query"}, {"required", false}, {"description", description},
          {"schema", {{"type", type}}}};
}

Json path_param(const std::string& name) {
  return {{"name", name}, {"in", "path"}, {"required", true}, {"schema", {{"type", "string"}}}};
}

Json filter_params() {
  return Json::array({
      query_param("rtype", "primary_source, processed_dataset or organization"),
      query_param("group", "Target language group id"),
      query_param("macroarea", "Macroarea id of any entry location"),
      query_param("license", "License property id"),
      query_param("media", "Media type id"),
      query_param("custodian_type", "Custodian type id (links followed)"),
      query_param("pii", "pii.contains answer id"),
      query_param("q", "Case-insensitive substring of uid, name or description"),
  });
}

Json page_params() {
  return Json::array({query_param("offset", "Items to skip", "integer"),
                      query_param("limit", "Page size (default 100)", "integer")});
}

Json join_params(Json a, const Json& b) {
  for (const auto& x : b) a.push_back(x);
  return a;
}

Json operation(const std::string& summary, const Json& responses, const Json& params = Json::array(),
               const Json& body = nullptr) {
  Json op{{"summary", summary}, {"responses", responses}};
  if (!params.empty()) op["parameters"] = params;
  if (!body.is_null()) op["requestBody"] = body;
  return op;
}

Json merge(Json a, const Json& b) {
  a.update(b);
  return a;
}

}  // namespace

Json openapi() {
  const Json entry_body = {{"required", true}, {"content", json_content(ref("CatalogueEntry"))}};
  const Json csv_body = {{"required", true},
                         {"content", {{"text/csv", {{"schema", {{"type", "string"}}}}}}}};
  const Json author_params = Json::array({query_param("author_name", "Recorded version author"),
                                          query_param("author_email", "Recorded version author email")});
  const Json uid = Json::array({path_param("uid")});
  const Json uid_sid = Json::array({path_param("uid"), path_param("session")});

  Json paths = Json::object();
  paths["/health"]["get"] = operation("Liveness and entry count", {{"200", ok("Service is up")}});
  paths["/openapi.json"]["get"] = operation("This document", {{"200", ok("OpenAPI document")}});
  paths["/schema"]["get"] =
      operation("Applicable sections per resource type, vocabularies, groups, macroareas and rule ids",
                {{"200", ok("Schema description")}});
  paths["/schema/canonicalize"]["post"] = operation(
      "Parse an entry and return its canonical form and validation report without saving",
      merge({{"200", ok("Canonical entry and report")}}, error_responses({400})), Json::array(),
      entry_body);
  paths["/gazetteer"]["get"] = operation("Gazetteer records", {{"200", ok("Records")}});

  paths["/entries"]["get"] = operation("Search entries (conjunctive filters), uid order",
                                       merge({{"200", ok("Page of entry summaries", ref("Page"))}},
                                             error_responses({400})),
                                       join_params(filter_params(), page_params()));
  paths["/entries"]["post"] =
      operation("Save an entry; a known uid gets a new version",
                merge({{"201", ok("Saved", ref("SaveResult"))}}, error_responses({400, 500})),
                Json::array(), entry_body);
  paths["/entries/{uid}"]["get"] = operation(
      "Latest version of an entry",
      merge({{"200", ok("Entry", ref("CatalogueEntry"))}}, error_responses({404})), uid);
  paths["/entries/{uid}/versions"]["get"] =
      operation("Versions in save order", merge({{"200", ok("Page of versions", ref("Page"))}}, error_responses({404})),
                join_params(uid, page_params()));
  paths["/entries/{uid}/versions/{version}"]["get"] =
      operation("One stored version", merge({{"200", ok("Version with entry")}}, error_responses({404})),
                Json::array({path_param("uid"), path_param("version")}));
  paths["/entries/{uid}/status"]["get"] =
      operation("Review status", merge({{"200", ok("Status")}}, error_responses({404})), uid);
  paths["/entries/{uid}/validations"]["get"] =
      operation("Validation records", merge({{"200", ok("Page of records", ref("Page"))}}, error_responses({404})),
                join_params(uid, page_params()));
  paths["/entries/{uid}/validations"]["post"] = operation(
      "Open a review session on the latest version",
      merge({{"201", ok("Session", ref("Session"))}}, error_responses({400, 404})), uid,
      {{"required", true},
       {"content", json_content({{"type", "object"},
                                 {"required", Json::array({"validator"})},
                                 {"properties", {{"validator", ref("Person")}}}})}});
  paths["/entries/{uid}/validations/{session}"]["get"] =
      operation("Review session", merge({{"200", ok("Session", ref("Session"))}}, error_responses({404})), uid_sid);
  paths["/entries/{uid}/validations/{session}/sections/{name}"]["patch"] = operation(
      "Check a section, optionally replacing its answers",
      merge({{"200", ok("Session", ref("Session"))}}, error_responses({400, 404, 409})),
      join_params(uid_sid, Json::array({path_param("name")})),
      {{"required", false},
       {"content", json_content({{"type", "object"}, {"properties", {{"edit", Json::object()}}}})}});
  paths["/entries/{uid}/validations/{session}/finalize"]["post"] = operation(
      "Save the validation record",
      merge({{"201", ok("Validation record")}}, error_responses({400, 404, 409, 500})), uid_sid);

  for (auto name : analytics_endpoints()) {
    Json params = filter_params();
    if (name == "language-regions") {
      params.push_back({{"name", "group"}, {"in", "query"}, {"required", true}, {"schema", {{"type", "string"}}}});
    }
    if (name == "custodian-locations") params.push_back(query_param("top", "Rows to return (default 10)", "integer"));
    if (name == "singletons") {
      params.push_back(query_param("exclude_target_groups", "Drop tags that belong to a target group", "boolean"));
    }
    const Json schema = name == "singletons" ? ref("TagList")
                        : name == "type-by-language-group" ? ref("CrossTab")
                                                           : ref("Distribution");
    paths["/analytics/" + std::string(name)]["get"] = operation(
        "Analytics table " + std::string(name) + " over the entries matching the filters",
        merge({{"200", ok("Table", schema)}}, error_responses({400})), params);
  }

  paths["/import/csv"]["post"] = operation(
      "Import CSV rows; each row saves independently",
      merge({{"200", ok("Saved uids and per-row errors", ref("ImportResult"))}}, error_responses({400, 500})),
      author_params, csv_body);
  paths["/import/json"]["post"] = operation(
      "Import a JSON array of entries (the export format)",
      merge({{"200", ok("Saved uids and per-item errors", ref("ImportResult"))}}, error_responses({400, 500})),
      author_params, {{"required", true}, {"content", json_content({{"type", "array"}})}});
  paths["/export"]["get"] = operation("Latest version of every entry, uid order",
                                      {{"200", ok("Entries", {{"type", "array"}, {"items", ref("CatalogueEntry")}})}});

  const Json str = {{"type", "string"}};
  const Json integer = {{"type", "integer"}};
  Json schemas = {
      {"ApiError",
       {{"type", "object"},
        {"required", Json::array({"error", "detail"})},
        {"properties",
         {{"error", {{"type", "string"},
                     {"enum", Json::array({"parse-error", "section-not-applicable", "validation-failed", "not-found",
                               "conflicting-finalize", "self-validation", "malformed-csv", "storage-io",
                               "method-not-allowed", "internal"})}}},
          {"detail", str},
          {"field_path", str},
          {"rule", str},
          {"violations", {{"type", "array"}, {"items", ref("Violation")}}}}}}},
      {"Violation",
       {{"type", "object"},
        {"properties", {{"rule", str}, {"field_path", str}, {"detail", str},
                        {"severity", {{"type", "string"}, {"enum", Json::array({"error", "warning"})}}}}}}},
      {"Person", {{"type", "object"}, {"properties", {{"name", str}, {"email", str}}}}},
      {"CatalogueEntry",
       {{"type", "object"},
        {"description", "Canonical entry JSON; see docs/canonical-json.md"},
        {"required", Json::array({"rtype", "general", "languages", "provenance"})}}},
      {"SaveResult",
       {{"type", "object"},
        {"properties", {{"uid", str}, {"version", integer}, {"warnings", {{"type", "array"}, {"items", ref("Violation")}}}}}}},
      {"Page",
       {{"type", "object"},
        {"properties", {{"total", integer}, {"offset", integer}, {"limit", integer}, {"items", {{"type", "array"}}}}}}},
      {"Session", {{"type", "object"}}},
      {"ImportResult", {{"type", "object"}, {"properties", {{"saved", {{"type", "array"}}}, {"errors", {{"type", "array"}}}}}}},
      {"Distribution",
       {{"type", "object"},
        {"properties",
         {{"table", str},
          {"rows", {{"type", "array"}}},
          {"denominator", integer},
          {"denominator_kind", str},
          {"percent_style", {{"type", "string"}, {"enum", Json::array({"integer", "two_decimals", "none"})}}},
          {"missing", integer}}}}},
      {"CrossTab", {{"type", "object"}}},
      {"TagList", {{"type", "object"}, {"properties", {{"table", str}, {"count", integer}, {"tags", {{"type", "array"}}}}}}},
  };

  return {{"openapi", "3.0.3"},
          {"info", {{"title", "Language resource catalogue API"}, {"version", "1.0.0"}}},
          {"paths", std::move(paths)},
          {"components", {{"schemas", std::move(schemas)}}}};
}

}  // namespace catalogue::service
