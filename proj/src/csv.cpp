#include "catalogue/csv.hpp"

#include <array>

#include "catalogue/entry_json.hpp"
#include "text_util.hpp"

namespace catalogue::csv {
namespace {

constexpr auto kColumns = std::to_array<std::string_view>({
    "rtype",
    "uid",
    "name",
    "homepage",
    "description",
    "languages",
    "locations",
    "custodian.link_uid",
    "custodian.name",
    "custodian.type",
    "custodian.location",
    "custodian.contact",
    "availability.procurement",
    "availability.download_url",
    "availability.contact",
    "license.explicit_terms",
    "license.properties",
    "license.named",
    "license.text",
    "license.usability",
    "pii.contains",
    "pii.justification",
    "pii.general.likelihood",
    "pii.numeric.likelihood",
    "pii.sensitive.likelihood",
    "pii.general.kinds",
    "pii.numeric.kinds",
    "pii.sensitive.kinds",
    "source.kind",
    "source.collection_type",
    "source.website_type",
    "dataset.originality",
    "dataset.sources_investigable",
    "dataset.linked_uids",
    "media.types",
    "media.format_note",
    "media.transcribed_from",
    "media.size_unit",
    "media.instance_count_exp",
    "media.words_per_instance_exp",
    "submitter.name",
    "submitter.email",
    "saved_at",
});

constexpr std::string_view kCategories[] = {"general", "numeric", "sensitive"};
constexpr std::string_view kOtherPrefix = "other:";

std::size_t column_index(std::string_view name) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (kColumns[i] == name) return i;
  }
  throw std::logic_error("unknown CSV column " + std::string(name));
}

/// Cell access by column name for one record.
class Cells {
 public:
  explicit Cells(const std::vector<std::string>& fields) : fields_(fields) {}

  const std::string& operator[](std::string_view column) const {
    return fields_[column_index(column)];
  }
  bool any(std::initializer_list<std::string_view> columns) const {
    for (auto c : columns) {
      if (!(*this)[c].empty()) return true;
    }
    return false;
  }

 private:
  const std::vector<std::string>& fields_;
};

std::vector<std::string> items(const std::string& cell) {
  if (cell.empty()) return {};
  std::vector<std::string> out;
  for (auto part : util::split(cell, '|')) out.emplace_back(part);
  return out;
}

Json open_cell(const std::string& cell) {
  if (cell.starts_with(kOtherPrefix)) return Json{{"other", cell.substr(kOtherPrefix.size())}};
  return cell;
}

Json list_cell(const std::string& cell, bool open) {
  Json arr = Json::array();
  for (const auto& item : items(cell)) arr.push_back(open ? open_cell(item) : Json(item));
  return arr;
}

void put(Json& obj, std::string_view key, const std::string& cell) {
  if (!cell.empty()) obj[std::string(key)] = cell;
}

void put_open(Json& obj, std::string_view key, const std::string& cell) {
  if (!cell.empty()) obj[std::string(key)] = open_cell(cell);
}

void put_int(Json& obj, std::string_view key, const std::string& cell, const std::string& path) {
  if (cell.empty()) return;
  try {
    std::size_t used = 0;
    const long v = std::stol(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    obj[std::string(key)] = v;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::parse_error, path + ": expected an integer", path);
  }
}

Json languages_cell(const std::string& cell) {
  Json arr = Json::array();
  for (const auto& item : items(cell)) {
    Json sel = Json::object();
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      sel["tag"] = item;
    } else {
      sel["group"] = item.substr(0, colon);
      if (colon + 1 < item.size()) sel["tag"] = item.substr(colon + 1);
    }
    arr.push_back(std::move(sel));
  }
  return arr;
}

Json record_to_json(const Cells& c) {
  Json j = Json::object();
  put(j, "rtype", c["rtype"]);

  Json general = Json::object();
  put(general, "uid", c["uid"]);
  put(general, "name", c["name"]);
  put(general, "homepage", c["homepage"]);
  put(general, "description", c["description"]);
  j["general"] = std::move(general);

  j["languages"] = languages_cell(c["languages"]);
  j["locations"] = list_cell(c["locations"], false);

  if (c.any({"custodian.link_uid", "custodian.name", "custodian.type", "custodian.location",
             "custodian.contact"})) {
    Json cust = Json::object();
    put(cust, "link_uid", c["custodian.link_uid"]);
    put(cust, "name", c["custodian.name"]);
    put(cust, "type", c["custodian.type"]);
    put(cust, "location", c["custodian.location"]);
    put(cust, "contact", c["custodian.contact"]);
    j["custodian"] = std::move(cust);
  }

  if (c.any({"availability.procurement", "availability.download_url", "availability.contact",
             "license.explicit_terms", "license.properties", "license.named", "license.text",
             "license.usability", "pii.contains", "pii.justification", "pii.general.likelihood",
             "pii.numeric.likelihood", "pii.sensitive.likelihood", "pii.general.kinds",
             "pii.numeric.kinds", "pii.sensitive.kinds"})) {
    Json av = Json::object();
    put(av, "procurement", c["availability.procurement"]);
    put(av, "download_url", c["availability.download_url"]);
    put(av, "contact", c["availability.contact"]);

    Json lic = Json::object();
    put(lic, "has_explicit_terms", c["license.explicit_terms"]);
    lic["properties"] = list_cell(c["license.properties"], false);
    lic["named_licenses"] = list_cell(c["license.named"], false);
    put(lic, "license_text", c["license.text"]);
    put(lic, "usability_assessment", c["license.usability"]);
    av["license"] = std::move(lic);

    Json pii = Json::object();
    put(pii, "contains", c["pii.contains"]);
    put_open(pii, "no_pii_justification", c["pii.justification"]);
    Json likelihood = Json::object();
    Json kinds = Json::object();
    for (auto cat : kCategories) {
      const std::string prefix = "pii." + std::string(cat);
      put(likelihood, cat, c[prefix + ".likelihood"]);
      kinds[std::string(cat)] = list_cell(c[prefix + ".kinds"], true);
    }
    pii["likelihood"] = std::move(likelihood);
    pii["kinds"] = std::move(kinds);
    av["pii"] = std::move(pii);
    j["availability"] = std::move(av);
  }

  if (c.any({"source.kind", "source.collection_type", "source.website_type"})) {
    Json st = Json::object();
    put_open(st, "kind", c["source.kind"]);
    put_open(st, "collection_type", c["source.collection_type"]);
    put_open(st, "website_type", c["source.website_type"]);
    j["source_type"] = std::move(st);
  }

  if (c.any({"dataset.originality", "dataset.sources_investigable", "dataset.linked_uids"})) {
    Json ds = Json::object();
    put(ds, "originality", c["dataset.originality"]);
    put(ds, "sources_investigable", c["dataset.sources_investigable"]);
    ds["linked_primary_uids"] = list_cell(c["dataset.linked_uids"], false);
    j["dataset_sources"] = std::move(ds);
  }

  if (c.any({"media.types", "media.format_note", "media.transcribed_from", "media.size_unit",
             "media.instance_count_exp", "media.words_per_instance_exp"})) {
    Json m = Json::object();
    m["media"] = list_cell(c["media.types"], false);
    put(m, "format_note", c["media.format_note"]);
    put(m, "transcribed_from", c["media.transcribed_from"]);
    put_open(m, "size_unit", c["media.size_unit"]);
    put_int(m, "instance_count_bucket", c["media.instance_count_exp"],
            "media.instance_count_bucket");
    put_int(m, "words_per_instance_bucket", c["media.words_per_instance_exp"],
            "media.words_per_instance_bucket");
    j["media"] = std::move(m);
  }

  Json prov = Json::object();
  Json sub = Json::object();
  put(sub, "name", c["submitter.name"]);
  put(sub, "email", c["submitter.email"]);
  prov["submitter"] = std::move(sub);
  put(prov, "saved_at", c["saved_at"]);
  j["provenance"] = std::move(prov);
  return j;
}

template <class E>
std::string open_text(const OpenChoice<E>& o) {
  if (o.value == E::other) return std::string(kOtherPrefix) + o.other_text;
  return std::string(vocab_id(o.value));
}

template <class Range, class F>
std::string join(const Range& r, F&& f) {
  std::string out;
  for (const auto& v : r) {
    if (!out.empty()) out += '|';
    out += f(v);
  }
  return out;
}

std::vector<std::string> entry_cells(const CatalogueEntry& e) {
  std::vector<std::string> f(kColumns.size());
  auto set = [&](std::string_view column, std::string value) {
    f[column_index(column)] = std::move(value);
  };
  auto set_opt = [&](std::string_view column, const std::optional<std::string>& value) {
    if (value) set(column, *value);
  };
  auto id = [](auto v) { return std::string(vocab_id(v)); };

  set("rtype", id(e.rtype));
  set("uid", e.general.uid);
  set("name", e.general.name);
  set_opt("homepage", e.general.homepage);
  set("description", e.general.description);
  set("languages", join(e.languages, [](const LanguageSelection& s) {
        std::string out;
        if (s.group) out = std::string(langtag::to_string(*s.group)) + ":";
        if (s.tag) out += s.tag->str();
        return out;
      }));
  set("locations", join(e.locations, [](const GeoLocation& l) { return l.raw; }));

  if (const auto& c = e.custodian) {
    set_opt("custodian.link_uid", c->link_uid);
    set_opt("custodian.name", c->name);
    if (c->ctype) set("custodian.type", id(*c->ctype));
    if (c->location) set("custodian.location", c->location->raw);
    set_opt("custodian.contact", c->contact);
  }

  if (const auto& a = e.availability) {
    set("availability.procurement", id(a->procurement));
    set_opt("availability.download_url", a->download_url);
    set_opt("availability.contact", a->contact);
    set("license.explicit_terms", id(a->license.has_explicit_terms));
    set("license.properties", join(a->license.properties, id));
    set("license.named", join(a->license.named_licenses, [](const std::string& s) { return s; }));
    set_opt("license.text", a->license.license_text);
    set_opt("license.usability", a->license.usability_assessment);
    if (a->pii.contains) set("pii.contains", id(*a->pii.contains));
    if (a->pii.no_pii_justification) set("pii.justification", open_text(*a->pii.no_pii_justification));
    for (PiiCategory cat : vocab_values<PiiCategory>()) {
      const std::string prefix = "pii." + id(cat);
      set(prefix + ".likelihood", id(a->pii.likelihood_of(cat)));
      set(prefix + ".kinds",
          join(a->pii.kinds_of(cat), [](const OpenChoice<PiiKind>& k) { return open_text(k); }));
    }
  }

  if (const auto& s = e.source_type) {
    set("source.kind", open_text(s->kind));
    if (s->collection_type) set("source.collection_type", open_text(*s->collection_type));
    if (s->website_type) set("source.website_type", open_text(*s->website_type));
  }

  if (const auto& d = e.dataset_sources) {
    set("dataset.originality", id(d->originality));
    if (d->sources_investigable) set("dataset.sources_investigable", id(*d->sources_investigable));
    set("dataset.linked_uids", join(d->linked_primary_uids, [](const std::string& s) { return s; }));
  }

  if (const auto& m = e.media) {
    set("media.types", join(m->media, id));
    set_opt("media.format_note", m->format_note);
    if (m->transcribed_from) set("media.transcribed_from", id(*m->transcribed_from));
    set("media.size_unit", open_text(m->size_unit));
    set("media.instance_count_exp", std::to_string(m->instance_count_bucket.exponent));
    set("media.words_per_instance_exp", std::to_string(m->words_per_instance_bucket.exponent));
  }

  set("submitter.name", e.provenance.submitter.name);
  set("submitter.email", e.provenance.submitter.email);
  set_opt("saved_at", e.provenance.saved_at);
  return f;
}

}  // namespace

std::span<const std::string_view> columns() { return kColumns; }

std::vector<Record> parse(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Record> out;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    Record rec;
    rec.line = line;
    std::string field;
    bool done = false;
    while (!done) {
      field.clear();
      if (i < n && text[i] == '"') {
        const std::size_t open_line = line;
        ++i;
        while (true) {
          if (i >= n) {
            throw Error(ErrorKind::malformed_csv,
                        "unterminated quoted field starting on line " + std::to_string(open_line));
          }
          const char ch = text[i++];
          if (ch == '"') {
            if (i < n && text[i] == '"') {
              field += '"';
              ++i;
            } else {
              break;
            }
          } else {
            if (ch == '\n') ++line;
            field += ch;
          }
        }
        if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw Error(ErrorKind::malformed_csv,
                      "unexpected character after closing quote on line " + std::to_string(line));
        }
      } else {
        while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') field += text[i++];
      }
      rec.fields.push_back(field);
      if (i < n && text[i] == ',') {
        ++i;
      } else {
        if (i < n && text[i] == '\r') ++i;
        if (i < n && text[i] == '\n') ++i;
        ++line;
        done = true;
      }
    }
    const bool blank = rec.fields.size() == 1 && rec.fields[0].empty();
    if (!blank) out.push_back(std::move(rec));
  }
  return out;
}

std::string format_row(std::span<const std::string> fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    const auto& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char ch : f) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
  }
  out += '\n';
  return out;
}

std::vector<Row> entries_from_csv(std::string_view text) {
  const auto records = parse(text);
  if (records.empty()) throw Error(ErrorKind::malformed_csv, "missing header row");
  const auto& header = records.front().fields;
  if (header.size() != kColumns.size() ||
      !std::equal(header.begin(), header.end(), kColumns.begin())) {
    std::string detail = "header does not match the documented columns";
    for (std::size_t i = 0; i < std::max(header.size(), kColumns.size()); ++i) {
      const std::string got = i < header.size() ? header[i] : "<missing>";
      const std::string want = i < kColumns.size() ? std::string(kColumns[i]) : "<none>";
      if (got != want) {
        detail += " (column " + std::to_string(i + 1) + ": expected '" + want + "', got '" + got +
                  "')";
        break;
      }
    }
    throw Error(ErrorKind::malformed_csv, detail);
  }

  std::vector<Row> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    Row row;
    row.line = rec.line;
    if (rec.fields.size() != kColumns.size()) {
      throw Error(ErrorKind::malformed_csv, "line " + std::to_string(rec.line) + " has " +
                                                std::to_string(rec.fields.size()) +
                                                " fields, expected " +
                                                std::to_string(kColumns.size()));
    }
    try {
      row.entry = entry_from_json_value(record_to_json(Cells(rec.fields)));
    } catch (const Error& e) {
      row.error = RowError{e.field_path(), e.what()};
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string entries_to_csv(std::span<const CatalogueEntry> entries) {
  std::vector<std::string> header(kColumns.begin(), kColumns.end());
  std::string out = format_row(header);
  for (const auto& e : entries) out += format_row(entry_cells(e));
  return out;
}

bool csv_addressable(const CatalogueEntry& e) {
  try {
    const auto rows = entries_from_csv(entries_to_csv(std::span(&e, 1)));
    return rows.size() == 1 && rows[0].entry && *rows[0].entry == e;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace catalogue::csv
