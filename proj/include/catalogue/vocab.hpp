#pragma once

// Closed vocabularies of the submission form. Every enum here has a
// Vocabulary<E> specialization listing its machine ids; parsing rejects
// anything outside that list.

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace catalogue {

enum class ResourceType { primary_source, processed_dataset, organization };

enum class CustodianType {
  university_or_research,
  commercial,
  nonprofit_ngo,
  private_individual,
  government,
  library_museum_archive,
  community,
  startup,
};

enum class Procurement { online_direct_download, online_after_contact, contact_custodian_only };

enum class ExplicitTerms { yes, no, unclear };

enum class LicenseProperty {
  open_license,
  public_domain,
  research_use,
  non_commercial_use,
  copyright,
  multiple_licenses,
  do_not_distribute,
};

enum class PiiContains { yes, yes_author_name_only, no, unclear };

enum class PiiCategory { general, numeric, sensitive };

enum class PiiLikelihood { very_likely, somewhat_likely, unlikely, none };

enum class PiiKind {
  // general
  names,
  addresses,
  accounts_handles,
  dates,
  full_face_photographs,
  biometric_identifiers,
  // numeric
  contact_numbers,
  vehicle_device_identifiers,
  ip_addresses,
  medical_health_plan_numbers,
  other_unique_numbers,
  // sensitive
  racial_ethnic_origin,
  political_opinions,
  religious_philosophical_beliefs,
  trade_union_membership,
  genetic_data,
  health_data,
  sex_life_sexual_orientation,
  // free response, allowed under any category
  other,
};

enum class NoPiiJustification { fictional, general_knowledge, other };

enum class SourceKind { collection, website, other };

enum class CollectionType {
  books_or_publishers,
  scientific_articles_journals,
  news_articles,
  radio_programs,
  movies_documentaries,
  podcasts,
  other,
};

enum class WebsiteType {
  social_media,
  forum,
  news_or_magazine,
  wiki,
  blog,
  content_repository,
  other,
};

enum class Originality { original, from_primary_sources };

enum class SourcesInvestigable { documented, described, openly_available, no };

enum class MediaType { text, audiovisual, image };

enum class TranscribedFrom { audiovisual, image };

enum class SizeUnit { articles, posts, dialogues, episodes, books, webpages, other };

enum class Section {
  general,
  languages,
  locations,
  custodian,
  availability,
  source_type,
  dataset_sources,
  media,
};

template <class E>
struct Vocabulary;

#define CATALOGUE_VOCAB(E, ...)                                                  \
  template <>                                                                    \
  struct Vocabulary<E> {                                                         \
    static constexpr auto entries = std::to_array<std::pair<E, std::string_view>>( \
        {__VA_ARGS__});                                                          \
  }

CATALOGUE_VOCAB(ResourceType, {ResourceType::primary_source, "primary_source"},
                {ResourceType::processed_dataset, "processed_dataset"},
                {ResourceType::organization, "organization"});

CATALOGUE_VOCAB(CustodianType, {CustodianType::university_or_research, "university_or_research"},
                {CustodianType::commercial, "commercial"},
                {CustodianType::nonprofit_ngo, "nonprofit_ngo"},
                {CustodianType::private_individual, "private_individual"},
                {CustodianType::government, "government"},
                {CustodianType::library_museum_archive, "library_museum_archive"},
                {CustodianType::community, "community"}, {CustodianType::startup, "startup"});

CATALOGUE_VOCAB(Procurement, {Procurement::online_direct_download, "online_direct_download"},
                {Procurement::online_after_contact, "online_after_contact"},
                {Procurement::contact_custodian_only, "contact_custodian_only"});

CATALOGUE_VOCAB(ExplicitTerms, {ExplicitTerms::yes, "yes"}, {ExplicitTerms::no, "no"},
                {ExplicitTerms::unclear, "unclear"});

CATALOGUE_VOCAB(LicenseProperty, {LicenseProperty::open_license, "open_license"},
                {LicenseProperty::public_domain, "public_domain"},
                {LicenseProperty::research_use, "research_use"},
                {LicenseProperty::non_commercial_use, "non_commercial_use"},
                {LicenseProperty::copyright, "copyright"},
                {LicenseProperty::multiple_licenses, "multiple_licenses"},
                {LicenseProperty::do_not_distribute, "do_not_distribute"});

CATALOGUE_VOCAB(PiiContains, {PiiContains::yes, "yes"},
                {PiiContains::yes_author_name_only, "yes_author_name_only"},
                {PiiContains::no, "no"}, {PiiContains::unclear, "unclear"});

CATALOGUE_VOCAB(PiiCategory, {PiiCategory::general, "general"},
                {PiiCategory::numeric, "numeric"}, {PiiCategory::sensitive, "sensitive"});

CATALOGUE_VOCAB(PiiLikelihood, {PiiLikelihood::very_likely, "very_likely"},
                {PiiLikelihood::somewhat_likely, "somewhat_likely"},
                {PiiLikelihood::unlikely, "unlikely"}, {PiiLikelihood::none, "none"});

CATALOGUE_VOCAB(PiiKind, {PiiKind::names, "names"}, {PiiKind::addresses, "addresses"},
                {PiiKind::accounts_handles, "accounts_handles"}, {PiiKind::dates, "dates"},
                {PiiKind::full_face_photographs, "full_face_photographs"},
                {PiiKind::biometric_identifiers, "biometric_identifiers"},
                {PiiKind::contact_numbers, "contact_numbers"},
                {PiiKind::vehicle_device_identifiers, "vehicle_device_identifiers"},
                {PiiKind::ip_addresses, "ip_addresses"},
                {PiiKind::medical_health_plan_numbers, "medical_health_plan_numbers"},
                {PiiKind::other_unique_numbers, "other_unique_numbers"},
                {PiiKind::racial_ethnic_origin, "racial_ethnic_origin"},
                {PiiKind::political_opinions, "political_opinions"},
                {PiiKind::religious_philosophical_beliefs, "religious_philosophical_beliefs"},
                {PiiKind::trade_union_membership, "trade_union_membership"},
                {PiiKind::genetic_data, "genetic_data"}, {PiiKind::health_data, "health_data"},
                {PiiKind::sex_life_sexual_orientation, "sex_life_sexual_orientation"},
                {PiiKind::other, "other"});

CATALOGUE_VOCAB(NoPiiJustification, {NoPiiJustification::fictional, "fictional"},
                {NoPiiJustification::general_knowledge, "general_knowledge"},
                {NoPiiJustification::other, "other"});

CATALOGUE_VOCAB(SourceKind, {SourceKind::collection, "collection"},
                {SourceKind::website, "website"}, {SourceKind::other, "other"});

CATALOGUE_VOCAB(CollectionType, {CollectionType::books_or_publishers, "books_or_publishers"},
                {CollectionType::scientific_articles_journals, "scientific_articles_journals"},
                {CollectionType::news_articles, "news_articles"},
                {CollectionType::radio_programs, "radio_programs"},
                {CollectionType::movies_documentaries, "movies_documentaries"},
                {CollectionType::podcasts, "podcasts"}, {CollectionType::other, "other"});

CATALOGUE_VOCAB(WebsiteType, {WebsiteType::social_media, "social_media"},
                {WebsiteType::forum, "forum"}, {WebsiteType::news_or_magazine, "news_or_magazine"},
                {WebsiteType::wiki, "wiki"}, {WebsiteType::blog, "blog"},
                {WebsiteType::content_repository, "content_repository"},
                {WebsiteType::other, "other"});

CATALOGUE_VOCAB(Originality, {Originality::original, "original"},
                {Originality::from_primary_sources, "from_primary_sources"});

CATALOGUE_VOCAB(SourcesInvestigable, {SourcesInvestigable::documented, "documented"},
                {SourcesInvestigable::described, "described"},
                {SourcesInvestigable::openly_available, "openly_available"},
                {SourcesInvestigable::no, "no"});

CATALOGUE_VOCAB(MediaType, {MediaType::text, "text"}, {MediaType::audiovisual, "audiovisual"},
                {MediaType::image, "image"});

CATALOGUE_VOCAB(TranscribedFrom, {TranscribedFrom::audiovisual, "audiovisual"},
                {TranscribedFrom::image, "image"});

CATALOGUE_VOCAB(SizeUnit, {SizeUnit::articles, "articles"}, {SizeUnit::posts, "posts"},
                {SizeUnit::dialogues, "dialogues"}, {SizeUnit::episodes, "episodes"},
                {SizeUnit::books, "books"}, {SizeUnit::webpages, "webpages"},
                {SizeUnit::other, "other"});

CATALOGUE_VOCAB(Section, {Section::general, "general"}, {Section::languages, "languages"},
                {Section::locations, "locations"}, {Section::custodian, "custodian"},
                {Section::availability, "availability"}, {Section::source_type, "source_type"},
                {Section::dataset_sources, "dataset_sources"}, {Section::media, "media"});

#undef CATALOGUE_VOCAB

template <class E>
constexpr std::string_view vocab_id(E value) {
  for (const auto& [v, id] : Vocabulary<E>::entries) {
    if (v == value) return id;
  }
  return {};
}

template <class E>
constexpr std::optional<E> vocab_parse(std::string_view id) {
  for (const auto& [v, name] : Vocabulary<E>::entries) {
    if (name == id) return v;
  }
  return std::nullopt;
}

template <class E>
constexpr auto vocab_values() {
  std::array<E, Vocabulary<E>::entries.size()> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Vocabulary<E>::entries[i].first;
  return out;
}

/// A closed-vocabulary answer with a free-response escape: `other_text` is
/// set exactly when `value` is E::other.
template <class E>
struct OpenChoice {
  E value{};
  std::string other_text;

  static OpenChoice other(std::string text) { return {E::other, std::move(text)}; }

  friend auto operator<=>(const OpenChoice&, const OpenChoice&) = default;
  friend bool operator==(const OpenChoice&, const OpenChoice&) = default;
};

/// Report row labels for the vocabularies that appear in analytics tables.
std::string_view display_name(ResourceType v);
std::string_view display_name(CustodianType v);
std::string_view display_name(LicenseProperty v);
std::string_view display_name(PiiContains v);

/// Category a PII kind belongs to; nullopt for PiiKind::other.
std::optional<PiiCategory> category_of(PiiKind k);

}  // namespace catalogue
