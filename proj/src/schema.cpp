#include "catalogue/schema.hpp"

#include "catalogue/errors.hpp"

namespace catalogue {

std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::section_not_applicable: return "section-not-applicable";
    case ErrorKind::validation_failed: return "validation-failed";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::conflicting_finalize: return "conflicting-finalize";
    case ErrorKind::self_validation: return "self-validation";
    case ErrorKind::malformed_csv: return "malformed-csv";
    case ErrorKind::storage_io: return "storage-io";
  }
  return "";
}

std::string_view display_name(ResourceType v) {
  switch (v) {
    case ResourceType::primary_source: return "Primary source";
    case ResourceType::processed_dataset: return "Processed dataset";
    case ResourceType::organization: return "Organization";
  }
  return "";
}

std::string_view display_name(CustodianType v) {
  switch (v) {
    case CustodianType::university_or_research: return "University or research institution";
    case CustodianType::commercial: return "Commercial entity";
    case CustodianType::nonprofit_ngo: return "Nonprofit / NGO";
    case CustodianType::private_individual: return "Private individual";
    case CustodianType::government: return "Government organization";
    case CustodianType::library_museum_archive: return "Library, museum or archival institute";
    case CustodianType::community: return "Community (incl. online)";
    case CustodianType::startup: return "Startup";
  }
  return "";
}

std::string_view display_name(LicenseProperty v) {
  switch (v) {
    case LicenseProperty::open_license: return "Open license";
    case LicenseProperty::public_domain: return "Public domain";
    case LicenseProperty::research_use: return "Research use";
    case LicenseProperty::non_commercial_use: return "Non-commercial use";
    case LicenseProperty::copyright: return "Copyright";
    case LicenseProperty::multiple_licenses: return "Multiple licenses";
    case LicenseProperty::do_not_distribute: return "Do not distribute";
  }
  return "";
}

std::string_view display_name(PiiContains v) {
  switch (v) {
    case PiiContains::yes: return "Yes";
    case PiiContains::yes_author_name_only: return "Yes (text author's name only)";
    case PiiContains::no: return "No";
    case PiiContains::unclear: return "Unclear";
  }
  return "";
}

std::optional<PiiCategory> category_of(PiiKind k) {
  switch (k) {
    case PiiKind::names:
    case PiiKind::addresses:
    case PiiKind::accounts_handles:
    case PiiKind::dates:
    case PiiKind::full_face_photographs:
    case PiiKind::biometric_identifiers:
      return PiiCategory::general;
    case PiiKind::contact_numbers:
    case PiiKind::vehicle_device_identifiers:
    case PiiKind::ip_addresses:
    case PiiKind::medical_health_plan_numbers:
    case PiiKind::other_unique_numbers:
      return PiiCategory::numeric;
    case PiiKind::racial_ethnic_origin:
    case PiiKind::political_opinions:
    case PiiKind::religious_philosophical_beliefs:
    case PiiKind::trade_union_membership:
    case PiiKind::genetic_data:
    case PiiKind::health_data:
    case PiiKind::sex_life_sexual_orientation:
      return PiiCategory::sensitive;
    case PiiKind::other:
      return std::nullopt;
  }
  return std::nullopt;
}

bool CatalogueEntry::has_section(Section s) const {
  switch (s) {
    case Section::general:
    case Section::languages:
    case Section::locations:
      return true;
    case Section::custodian: return custodian.has_value();
    case Section::availability: return availability.has_value();
    case Section::source_type: return source_type.has_value();
    case Section::dataset_sources: return dataset_sources.has_value();
    case Section::media: return media.has_value();
  }
  return false;
}

bool is_applicable(ResourceType rtype, Section s) {
  switch (s) {
    case Section::general:
    case Section::languages:
    case Section::locations:
    case Section::custodian:
      return true;
    case Section::availability:
    case Section::media:
      return rtype != ResourceType::organization;
    case Section::source_type: return rtype == ResourceType::primary_source;
    case Section::dataset_sources: return rtype == ResourceType::processed_dataset;
  }
  return false;
}

bool is_required(ResourceType rtype, Section s) {
  return s != Section::custodian && is_applicable(rtype, s);
}

std::vector<Section> applicable_sections(ResourceType rtype) {
  std::vector<Section> out;
  for (Section s : vocab_values<Section>()) {
    if (is_applicable(rtype, s)) out.push_back(s);
  }
  return out;
}

std::set<TargetGroup> entry_groups(const CatalogueEntry& e, const langtag::MembershipTable& table) {
  std::set<TargetGroup> out;
  for (const auto& sel : e.languages) {
    if (sel.group) {
      out.insert(*sel.group);
    } else if (sel.tag) {
      if (auto g = langtag::group_of(*sel.tag, table)) out.insert(*g);
    }
  }
  return out;
}

}  // namespace catalogue
