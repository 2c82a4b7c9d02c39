#pragma once

// The catalogue entry data model: one struct per form section, plus the
// section applicability rules that tie sections to resource types.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "catalogue/geo.hpp"
#include "catalogue/langtag.hpp"
#include "catalogue/vocab.hpp"

namespace catalogue {

using geo::GeoLocation;
using langtag::LanguageTag;
using langtag::TargetGroup;

struct Person {
  std::string name;
  std::string email;

  friend bool operator==(const Person&, const Person&) = default;
};

struct GeneralInfo {
  std::string uid;
  std::string name;
  std::optional<std::string> homepage;
  std::string description;

  friend bool operator==(const GeneralInfo&, const GeneralInfo&) = default;
};

struct LanguageSelection {
  std::optional<TargetGroup> group;
  std::optional<LanguageTag> tag;
  std::optional<std::string> variety_comment;

  friend bool operator==(const LanguageSelection&, const LanguageSelection&) = default;
};

struct Custodian {
  std::optional<std::string> link_uid;
  std::optional<std::string> name;
  std::optional<CustodianType> ctype;
  std::optional<GeoLocation> location;
  std::optional<std::string> contact;

  friend bool operator==(const Custodian&, const Custodian&) = default;
};

struct LicenseInfo {
  ExplicitTerms has_explicit_terms = ExplicitTerms::unclear;
  std::set<LicenseProperty> properties;
  std::vector<std::string> named_licenses;
  std::optional<std::string> license_text;
  std::optional<std::string> usability_assessment;

  friend bool operator==(const LicenseInfo&, const LicenseInfo&) = default;
};

inline constexpr std::size_t kPiiCategoryCount = 3;

struct PIIAssessment {
  /// Unset when the submitter left the question unanswered.
  std::optional<PiiContains> contains;
  std::array<PiiLikelihood, kPiiCategoryCount> likelihood{PiiLikelihood::none, PiiLikelihood::none,
                                                          PiiLikelihood::none};
  std::array<std::set<OpenChoice<PiiKind>>, kPiiCategoryCount> kinds;
  std::optional<OpenChoice<NoPiiJustification>> no_pii_justification;

  PiiLikelihood& likelihood_of(PiiCategory c) { return likelihood[static_cast<std::size_t>(c)]; }
  PiiLikelihood likelihood_of(PiiCategory c) const {
    return likelihood[static_cast<std::size_t>(c)];
  }
  std::set<OpenChoice<PiiKind>>& kinds_of(PiiCategory c) {
    return kinds[static_cast<std::size_t>(c)];
  }
  const std::set<OpenChoice<PiiKind>>& kinds_of(PiiCategory c) const {
    return kinds[static_cast<std::size_t>(c)];
  }

  friend bool operator==(const PIIAssessment&, const PIIAssessment&) = default;
};

struct Availability {
  Procurement procurement = Procurement::contact_custodian_only;
  std::optional<std::string> download_url;
  std::optional<std::string> contact;
  LicenseInfo license;
  PIIAssessment pii;

  friend bool operator==(const Availability&, const Availability&) = default;
};

struct PrimarySourceType {
  OpenChoice<SourceKind> kind;
  std::optional<OpenChoice<CollectionType>> collection_type;
  std::optional<OpenChoice<WebsiteType>> website_type;

  friend bool operator==(const PrimarySourceType&, const PrimarySourceType&) = default;
};

struct DatasetSources {
  Originality originality = Originality::original;
  std::optional<SourcesInvestigable> sources_investigable;
  std::vector<std::string> linked_primary_uids;
  std::vector<PrimarySourceType> source_types;
  std::optional<LicenseInfo> source_license;

  friend bool operator==(const DatasetSources&, const DatasetSources&) = default;
};

inline constexpr int kMaxMagnitudeExponent = 12;

/// The half-open decade [10^exponent, 10^(exponent+1)).
struct MagnitudeBucket {
  int exponent = 0;

  friend bool operator==(const MagnitudeBucket&, const MagnitudeBucket&) = default;
};

struct MediaSpec {
  std::set<MediaType> media;
  std::optional<std::string> format_note;
  std::optional<TranscribedFrom> transcribed_from;
  OpenChoice<SizeUnit> size_unit;
  MagnitudeBucket instance_count_bucket;
  MagnitudeBucket words_per_instance_bucket;

  friend bool operator==(const MediaSpec&, const MediaSpec&) = default;
};

struct Provenance {
  Person submitter;
  std::optional<std::string> saved_at;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct CatalogueEntry {
  ResourceType rtype = ResourceType::organization;
  GeneralInfo general;
  std::vector<LanguageSelection> languages;
  std::vector<GeoLocation> locations;
  std::optional<Custodian> custodian;
  std::optional<Availability> availability;
  std::optional<PrimarySourceType> source_type;
  std::optional<DatasetSources> dataset_sources;
  std::optional<MediaSpec> media;
  Provenance provenance;

  const std::string& uid() const { return general.uid; }
  bool has_section(Section s) const;

  friend bool operator==(const CatalogueEntry&, const CatalogueEntry&) = default;
};

/// Sections a resource type answers, in form order.
std::vector<Section> applicable_sections(ResourceType rtype);

bool is_applicable(ResourceType rtype, Section s);

/// Sections that must be present (all applicable ones except the optional
/// custodian section).
bool is_required(ResourceType rtype, Section s);

inline std::optional<geo::Macroarea> first_location_macroarea(const CatalogueEntry& e) {
  return geo::first_location_macroarea(e.locations);
}

/// Distinct target groups of an entry, from explicit group answers and from
/// tag membership.
std::set<TargetGroup> entry_groups(const CatalogueEntry& e,
                                   const langtag::MembershipTable& table =
                                       langtag::MembershipTable::builtin());

}  // namespace catalogue
