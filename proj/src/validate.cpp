#include "catalogue/validate.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

#include "text_util.hpp"

namespace catalogue {
namespace rules {

std::span<const std::string_view> all() {
  static constexpr std::array kAll = {
      uid_format,           name_required,           description_required,
      url_format,           email_format,            submitter_required,
      languages_required,   language_selection_empty, language_group_mismatch,
      location_level,       section_applicability,   custodian_missing,
      custodian_incomplete, custodian_link_target,   download_url_required,
      contact_required,     license_assessment_required, pii_justification_required,
      pii_kind_likelihood,  source_type_detail,      dataset_original_fields,
      link_target_type,     media_required,          transcription_source,
      magnitude_range,
  };
  return kAll;
}

}  // namespace rules

namespace {

class ReportBuilder {
 public:
  void add(std::string_view rule, std::string path, std::string detail,
           Severity severity = Severity::error) {
    if (!seen_.emplace(std::string(rule), path).second) return;
    report_.violations.push_back({std::string(rule), std::move(path), std::move(detail), severity});
  }

  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
  std::set<std::pair<std::string, std::string>> seen_;
};

std::string at(const std::string& base, std::string_view key) {
  return base + "." + std::string(key);
}

std::string at(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

bool blank(std::string_view s) { return util::trim(s).empty(); }

void check_location(ReportBuilder& out, const GeoLocation& loc, const std::string& path) {
  if (!geo::is_consistent(loc)) {
    out.add(rules::location_level, path,
            "location '" + loc.raw + "' has inconsistent level, macroarea and country code");
  }
}

void check_license(ReportBuilder& out, const LicenseInfo& l, const std::string& path) {
  if (l.has_explicit_terms == ExplicitTerms::unclear &&
      (!l.usability_assessment || blank(*l.usability_assessment))) {
    out.add(rules::license_assessment_required, at(path, "usability_assessment"),
            "unclear license terms need a usability assessment");
  }
}

void check_pii(ReportBuilder& out, const PIIAssessment& p, const std::string& path) {
  if (p.contains == PiiContains::no && !p.no_pii_justification) {
    out.add(rules::pii_justification_required, at(path, "no_pii_justification"),
            "a resource declared free of PII needs a justification");
  }
  for (PiiCategory c : vocab_values<PiiCategory>()) {
    if (!p.kinds_of(c).empty() && p.likelihood_of(c) == PiiLikelihood::none) {
      out.add(rules::pii_kind_likelihood, at(at(path, "kinds"), vocab_id(c)),
              "PII kinds selected for a category whose likelihood is 'none'");
    }
  }
}

void check_source_type(ReportBuilder& out, const PrimarySourceType& s, const std::string& path) {
  const bool is_collection = s.kind.value == SourceKind::collection;
  const bool is_website = s.kind.value == SourceKind::website;
  if (is_collection != s.collection_type.has_value()) {
    out.add(rules::source_type_detail, at(path, "collection_type"),
            is_collection ? "collections need a collection type"
                          : "collection type given for a non-collection source");
  }
  if (is_website != s.website_type.has_value()) {
    out.add(rules::source_type_detail, at(path, "website_type"),
            is_website ? "websites need a website type" : "website type given for a non-website source");
  }
}

void check_general(ReportBuilder& out, const GeneralInfo& g) {
  if (!is_valid_uid(g.uid)) {
    out.add(rules::uid_format, "general.uid",
            "uid must be 3-64 characters of lowercase letters, digits and hyphens");
  }
  if (blank(g.name)) out.add(rules::name_required, "general.name", "name is empty");
  if (blank(g.description)) {
    out.add(rules::description_required, "general.description", "description is empty");
  }
  if (g.homepage && !is_valid_url(*g.homepage)) {
    out.add(rules::url_format, "general.homepage", "homepage is not an http(s) URL");
  }
}

void check_languages(ReportBuilder& out, const std::vector<LanguageSelection>& langs) {
  if (langs.empty()) {
    out.add(rules::languages_required, "languages", "at least one language is required");
  }
  for (std::size_t i = 0; i < langs.size(); ++i) {
    const auto& sel = langs[i];
    const std::string path = at(std::string("languages"), i);
    if (!sel.group && !sel.tag) {
      out.add(rules::language_selection_empty, path, "selection has neither group nor tag");
      continue;
    }
    if (sel.group && sel.tag) {
      const auto tag_group = langtag::group_of(*sel.tag);
      if (tag_group && *tag_group != *sel.group) {
        out.add(rules::language_group_mismatch, path,
                "tag " + sel.tag->str() + " belongs to " +
                    std::string(langtag::to_string(*tag_group)) + ", not " +
                    std::string(langtag::to_string(*sel.group)));
      }
    }
  }
}

void check_custodian(ReportBuilder& out, const CatalogueEntry& e, const CatalogueIndex& idx) {
  if (!e.custodian) {
    out.add(rules::custodian_missing, "custodian", "no data custodian recorded",
            Severity::warning);
    return;
  }
  const Custodian& c = *e.custodian;
  if (c.link_uid) {
    const bool self_link = *c.link_uid == e.uid() && e.rtype == ResourceType::organization;
    const auto it = idx.find(*c.link_uid);
    if (!self_link && (it == idx.end() || it->second != ResourceType::organization)) {
      out.add(rules::custodian_link_target, "custodian.link_uid",
              it == idx.end() ? "linked custodian '" + *c.link_uid + "' does not exist"
                              : "linked custodian '" + *c.link_uid + "' is not an organization");
    }
  } else if (!c.name || blank(*c.name) || !c.ctype) {
    out.add(rules::custodian_incomplete, "custodian",
            "custodian needs a link to an organization entry or a name and type");
  }
  if (c.location) check_location(out, *c.location, "custodian.location");
  if (c.contact && !is_valid_email(*c.contact)) {
    out.add(rules::email_format, "custodian.contact", "contact is not an email address");
  }
}

void check_availability(ReportBuilder& out, const CatalogueEntry& e) {
  const Availability& a = *e.availability;
  if (a.procurement == Procurement::online_direct_download) {
    if (!a.download_url) {
      out.add(rules::download_url_required, "availability.download_url",
              "direct downloads need a download URL");
    }
  } else {
    const bool custodian_contact = e.custodian && e.custodian->contact;
    if (!a.contact && !custodian_contact) {
      out.add(rules::contact_required, "availability.contact",
              "resources obtained through the custodian need a contact");
    }
  }
  if (a.download_url && !is_valid_url(*a.download_url)) {
    out.add(rules::url_format, "availability.download_url", "download URL is not an http(s) URL");
  }
  if (a.contact && !is_valid_email(*a.contact)) {
    out.add(rules::email_format, "availability.contact", "contact is not an email address");
  }
  check_license(out, a.license, "availability.license");
  check_pii(out, a.pii, "availability.pii");
}

void check_dataset_sources(ReportBuilder& out, const DatasetSources& d, const CatalogueIndex& idx) {
  if (d.originality == Originality::original) {
    if (d.sources_investigable || !d.linked_primary_uids.empty() || !d.source_types.empty() ||
        d.source_license) {
      out.add(rules::dataset_original_fields, "dataset_sources",
              "original datasets do not answer the primary-source questions");
    }
    return;
  }
  for (std::size_t i = 0; i < d.linked_primary_uids.size(); ++i) {
    const std::string& uid = d.linked_primary_uids[i];
    const auto it = idx.find(uid);
    if (it == idx.end() || it->second != ResourceType::primary_source) {
      out.add(rules::link_target_type, at(std::string("dataset_sources.linked_primary_uids"), i),
              it == idx.end() ? "linked entry '" + uid + "' does not exist"
                              : "linked entry '" + uid + "' is not a primary source");
    }
  }
  for (std::size_t i = 0; i < d.source_types.size(); ++i) {
    check_source_type(out, d.source_types[i], at(std::string("dataset_sources.source_types"), i));
  }
  if (d.source_license) check_license(out, *d.source_license, "dataset_sources.source_license");
}

void check_media(ReportBuilder& out, const MediaSpec& m) {
  if (m.media.empty()) out.add(rules::media_required, "media.media", "no media type selected");
  if (m.transcribed_from && m.media.count(MediaType::text) == 0) {
    out.add(rules::transcription_source, "media.transcribed_from",
            "only text data can be transcribed from another medium");
  }
  auto check_bucket = [&](const MagnitudeBucket& b, const char* field) {
    if (b.exponent < 0 || b.exponent > kMaxMagnitudeExponent) {
      out.add(rules::magnitude_range, std::string("media.") + field,
              "magnitude exponent must be within 0.." + std::to_string(kMaxMagnitudeExponent));
    }
  };
  check_bucket(m.instance_count_bucket, "instance_count_bucket");
  check_bucket(m.words_per_instance_bucket, "words_per_instance_bucket");
}

}  // namespace

bool is_valid_uid(std::string_view uid) {
  if (uid.size() < 3 || uid.size() > 64) return false;
  return std::all_of(uid.begin(), uid.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
  });
}

bool is_valid_url(std::string_view url) {
  std::string_view rest;
  if (url.starts_with("https://")) {
    rest = url.substr(8);
  } else if (url.starts_with("http://")) {
    rest = url.substr(7);
  } else {
    return false;
  }
  if (rest.empty() || rest.front() == '/') return false;
  return std::none_of(url.begin(), url.end(), [](unsigned char c) { return c <= ' '; });
}

bool is_valid_email(std::string_view email) {
  const auto atpos = email.find('@');
  if (atpos == std::string_view::npos || atpos == 0) return false;
  if (email.find('@', atpos + 1) != std::string_view::npos) return false;
  const std::string_view domain = email.substr(atpos + 1);
  const auto dot = domain.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == domain.size()) return false;
  return std::none_of(email.begin(), email.end(), [](unsigned char c) { return c <= ' '; });
}

ValidationReport validate_entry(const CatalogueEntry& e, const CatalogueIndex& catalogue) {
  ReportBuilder out;
  check_general(out, e.general);
  check_languages(out, e.languages);
  for (std::size_t i = 0; i < e.locations.size(); ++i) {
    check_location(out, e.locations[i], at(std::string("locations"), i));
  }

  for (Section s : vocab_values<Section>()) {
    const bool present = e.has_section(s);
    const std::string name(vocab_id(s));
    if (present && !is_applicable(e.rtype, s)) {
      out.add(rules::section_applicability, name,
              "section '" + name + "' does not apply to " + std::string(vocab_id(e.rtype)) +
                  " entries");
    } else if (!present && is_required(e.rtype, s)) {
      out.add(rules::section_applicability, name,
              "section '" + name + "' is required for " + std::string(vocab_id(e.rtype)) +
                  " entries");
    }
  }

  check_custodian(out, e, catalogue);
  // Inapplicable sections were reported above; their contents are not checked.
  if (e.availability && is_applicable(e.rtype, Section::availability)) check_availability(out, e);
  if (e.source_type && is_applicable(e.rtype, Section::source_type)) {
    check_source_type(out, *e.source_type, "source_type");
  }
  if (e.dataset_sources && is_applicable(e.rtype, Section::dataset_sources)) {
    check_dataset_sources(out, *e.dataset_sources, catalogue);
  }
  if (e.media && is_applicable(e.rtype, Section::media)) check_media(out, *e.media);

  if (blank(e.provenance.submitter.name) || blank(e.provenance.submitter.email)) {
    out.add(rules::submitter_required, "provenance.submitter",
            "submitter name and email are required to save an entry");
  } else if (!is_valid_email(e.provenance.submitter.email)) {
    out.add(rules::email_format, "provenance.submitter.email",
            "submitter email is not an email address");
  }
  return out.take();
}

CatalogueIndex make_index(std::span<const CatalogueEntry> entries) {
  CatalogueIndex idx;
  for (const auto& e : entries) idx[e.uid()] = e.rtype;
  return idx;
}

std::vector<ValidationReport> validate_all(std::span<const CatalogueEntry> entries,
                                           const CatalogueIndex& catalogue) {
  std::vector<ValidationReport> out(entries.size());
  const auto n = static_cast<std::ptrdiff_t>(entries.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = validate_entry(entries[static_cast<std::size_t>(i)], catalogue);
  }
  return out;
}

}  // namespace catalogue
