#pragma once

// BCP-47 language tags: well-formedness parsing, casing normalization, and
// the mapping from tags to the catalogue's target language groups.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catalogue::langtag {

enum class TargetGroup {
  Arabic,
  Basque,
  Catalan,
  Chinese,
  English,
  French,
  Indic,
  Indonesian,
  NigerCongo,
  Portuguese,
  Spanish,
  Vietnamese,
  Programming,
};

inline constexpr std::size_t kTargetGroupCount = 13;

inline constexpr std::array<TargetGroup, kTargetGroupCount> kAllTargetGroups = {
    TargetGroup::Arabic,     TargetGroup::Basque,     TargetGroup::Catalan,
    TargetGroup::Chinese,    TargetGroup::English,    TargetGroup::French,
    TargetGroup::Indic,      TargetGroup::Indonesian, TargetGroup::NigerCongo,
    TargetGroup::Portuguese, TargetGroup::Spanish,    TargetGroup::Vietnamese,
    TargetGroup::Programming,
};

/// Machine identifier, e.g. "NigerCongo".
std::string_view to_string(TargetGroup g);
/// Human label, e.g. "Niger-Congo".
std::string_view display_name(TargetGroup g);
std::optional<TargetGroup> target_group_from_string(std::string_view s);

struct Extension {
  char singleton = 0;
  std::vector<std::string> subtags;

  friend bool operator==(const Extension&, const Extension&) = default;
};

/// A parsed tag. Grandfathered tags keep their registered form in
/// `grandfathered` and leave the structural fields empty, except for the
/// regular grandfathered tags whose first subtag is a language ("en-GB-oed"),
/// which also populate `language`.
struct LanguageTag {
  std::string language;
  std::vector<std::string> extlangs;
  std::string script;
  std::string region;
  std::vector<std::string> variants;
  std::vector<Extension> extensions;
  std::vector<std::string> private_use;
  std::string grandfathered;

  bool is_private_use_only() const { return language.empty() && grandfathered.empty(); }
  bool is_grandfathered() const { return !grandfathered.empty(); }

  /// Canonical string form ("zh-Hant-TW").
  std::string str() const;

  friend bool operator==(const LanguageTag&, const LanguageTag&) = default;
};

class TagParseError : public std::runtime_error {
 public:
  TagParseError(std::string message, std::size_t subtag_index, std::size_t offset,
                std::string subtag);

  /// 1-based index of the first offending subtag.
  std::size_t subtag_index() const noexcept { return subtag_index_; }
  /// Byte offset of that subtag in the input.
  std::size_t offset() const noexcept { return offset_; }
  const std::string& subtag() const noexcept { return subtag_; }

 private:
  std::size_t subtag_index_;
  std::size_t offset_;
  std::string subtag_;
};

/// Parses any string accepted by the RFC 5646 Language-Tag production.
/// Throws TagParseError naming the first subtag that cannot be consumed.
LanguageTag parse_tag(std::string_view s);

/// Non-throwing variant.
std::optional<LanguageTag> try_parse_tag(std::string_view s);

/// Applies the RFC 5646 casing conventions. Idempotent.
LanguageTag normalize_tag(const LanguageTag& t);

/// Table mapping primary/extlang subtags to target groups.
class MembershipTable {
 public:
  MembershipTable() = default;

  /// Parses `subtag<TAB>group` lines; '#' starts a comment line.
  static MembershipTable parse(std::string_view text);
  static MembershipTable load(const std::string& path);

  /// The table shipped with the library (data/language_groups.tsv).
  static const MembershipTable& builtin();

  std::optional<TargetGroup> lookup(std::string_view subtag) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, TargetGroup, std::less<>> table_;
};

/// Group of a tag: extlang first, then the primary language subtag.
/// Private-use tags of the form "x-code-<name>" map to Programming.
std::optional<TargetGroup> group_of(const LanguageTag& t,
                                    const MembershipTable& table = MembershipTable::builtin());

}  // namespace catalogue::langtag
