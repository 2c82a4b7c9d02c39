#include "catalogue/langtag.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "embedded_data.hpp"
#include "text_util.hpp"

namespace catalogue::langtag {
namespace {

using util::is_alnum_str;
using util::is_alpha_str;
using util::is_digit_str;
using util::to_lower;
using util::to_upper;

// RFC 5646 section 2.2.8, in registered casing.
constexpr std::array<std::string_view, 26> kGrandfathered = {
    // irregular
    "en-GB-oed", "i-ami", "i-bnn", "i-default", "i-enochian", "i-hak", "i-klingon", "i-lux",
    "i-mingo", "i-navajo", "i-pwn", "i-tao", "i-tay", "i-tsu", "sgn-BE-FR", "sgn-BE-NL",
    "sgn-CH-DE",
    // regular
    "art-lojban", "cel-gaulish", "no-bok", "no-nyn", "zh-guoyu", "zh-hakka", "zh-min",
    "zh-min-nan", "zh-xiang"};

std::string title_case(std::string_view s) {
  std::string out = to_lower(s);
  if (!out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

struct Subtag {
  std::string_view text;
  std::size_t offset;
};

std::vector<Subtag> split_subtags(std::string_view s) {
  std::vector<Subtag> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = s.find('-', start);
    if (dash == std::string_view::npos) {
      out.push_back({s.substr(start), start});
      break;
    }
    out.push_back({s.substr(start, dash - start), start});
    start = dash + 1;
  }
  return out;
}

bool is_variant(std::string_view s) {
  if (s.size() >= 5 && s.size() <= 8) return is_alnum_str(s);
  return s.size() == 4 && std::isdigit(static_cast<unsigned char>(s[0])) && is_alnum_str(s);
}

bool is_region(std::string_view s) {
  return (s.size() == 2 && is_alpha_str(s)) || (s.size() == 3 && is_digit_str(s));
}

bool is_singleton(std::string_view s) {
  return s.size() == 1 && is_alnum_str(s) && s[0] != 'x' && s[0] != 'X';
}

bool is_x(std::string_view s) { return s == "x" || s == "X"; }

class Parser {
 public:
  explicit Parser(std::string_view input) : subtags_(split_subtags(input)) {}

  LanguageTag run() {
    LanguageTag tag;
    if (is_x(peek())) {
      parse_private_use(tag);
      expect_end();
      return tag;
    }

    const std::string_view lang = peek();
    if (!is_alpha_str(lang) || lang.size() < 2 || lang.size() > 8) {
      fail("primary language subtag must be 2-8 letters");
    }
    tag.language = to_lower(lang);
    advance();

    if (lang.size() <= 3) {
      while (tag.extlangs.size() < 3 && !at_end() && peek().size() == 3 && is_alpha_str(peek())) {
        tag.extlangs.push_back(to_lower(peek()));
        advance();
      }
    }
    if (!at_end() && peek().size() == 4 && is_alpha_str(peek())) {
      tag.script = title_case(peek());
      advance();
    }
    if (!at_end() && is_region(peek())) {
      tag.region = to_upper(peek());
      advance();
    }
    while (!at_end() && is_variant(peek())) {
      tag.variants.push_back(to_lower(peek()));
      advance();
    }
    while (!at_end() && is_singleton(peek())) {
      Extension ext;
      ext.singleton = static_cast<char>(std::tolower(static_cast<unsigned char>(peek()[0])));
      advance();
      while (!at_end() && peek().size() >= 2 && peek().size() <= 8 && is_alnum_str(peek())) {
        ext.subtags.push_back(to_lower(peek()));
        advance();
      }
      if (ext.subtags.empty()) {
        if (at_end()) back_up();
        fail("extension singleton must be followed by 2-8 character subtags");
      }
      tag.extensions.push_back(std::move(ext));
    }
    if (!at_end() && is_x(peek())) {
      parse_private_use(tag);
    }
    expect_end();
    return tag;
  }

 private:
  std::string_view peek() const { return subtags_[pos_].text; }
  bool at_end() const { return pos_ >= subtags_.size(); }
  void advance() { ++pos_; }
  void back_up() { --pos_; }

  void parse_private_use(LanguageTag& tag) {
    advance();
    while (!at_end() && !peek().empty() && peek().size() <= 8 && is_alnum_str(peek())) {
      tag.private_use.push_back(to_lower(peek()));
      advance();
    }
    if (tag.private_use.empty()) {
      if (at_end()) back_up();
      fail("private-use marker must be followed by 1-8 character subtags");
    }
  }

  void expect_end() {
    if (!at_end()) {
      fail(peek().empty() ? "empty subtag" : "unexpected subtag");
    }
  }

  [[noreturn]] void fail(const std::string& why) const {
    const Subtag& s = subtags_[pos_];
    std::ostringstream msg;
    msg << "invalid language tag: subtag " << (pos_ + 1) << " ('" << s.text << "' at offset "
        << s.offset << "): " << why;
    throw TagParseError(msg.str(), pos_ + 1, s.offset, std::string(s.text));
  }

  std::vector<Subtag> subtags_;
  std::size_t pos_ = 0;
};

std::optional<std::string_view> match_grandfathered(std::string_view s) {
  for (std::string_view g : kGrandfathered) {
    if (util::iequals(g, s)) return g;
  }
  return std::nullopt;
}

LanguageTag grandfathered_tag(std::string_view registered) {
  LanguageTag tag;
  tag.grandfathered = std::string(registered);
  if (!registered.starts_with("i-")) {
    tag.language = std::string(registered.substr(0, registered.find('-')));
  }
  return tag;
}

}  // namespace

TagParseError::TagParseError(std::string message, std::size_t subtag_index, std::size_t offset,
                             std::string subtag)
    : std::runtime_error(std::move(message)),
      subtag_index_(subtag_index),
      offset_(offset),
      subtag_(std::move(subtag)) {}

std::string_view to_string(TargetGroup g) {
  switch (g) {
    case TargetGroup::Arabic: return "Arabic";
    case TargetGroup::Basque: return "Basque";
    case TargetGroup::Catalan: return "Catalan";
    case TargetGroup::Chinese: return "Chinese";
    case TargetGroup::English: return "English";
    case TargetGroup::French: return "French";
    case TargetGroup::Indic: return "Indic";
    case TargetGroup::Indonesian: return "Indonesian";
    case TargetGroup::NigerCongo: return "NigerCongo";
    case TargetGroup::Portuguese: return "Portuguese";
    case TargetGroup::Spanish: return "Spanish";
    case TargetGroup::Vietnamese: return "Vietnamese";
    case TargetGroup::Programming: return "Programming";
  }
  return "";
}

std::string_view display_name(TargetGroup g) {
  switch (g) {
    case TargetGroup::NigerCongo: return "Niger-Congo";
    case TargetGroup::Programming: return "Programming languages";
    default: return to_string(g);
  }
}

std::optional<TargetGroup> target_group_from_string(std::string_view s) {
  for (TargetGroup g : kAllTargetGroups) {
    if (to_string(g) == s) return g;
  }
  return std::nullopt;
}

std::string LanguageTag::str() const {
  if (!grandfathered.empty()) return grandfathered;
  std::string out = language;
  auto append = [&out](std::string_view part) {
    if (!out.empty()) out += '-';
    out += part;
  };
  for (const auto& e : extlangs) append(e);
  if (!script.empty()) append(script);
  if (!region.empty()) append(region);
  for (const auto& v : variants) append(v);
  for (const auto& ext : extensions) {
    append(std::string_view(&ext.singleton, 1));
    for (const auto& s : ext.subtags) append(s);
  }
  if (!private_use.empty()) {
    append("x");
    for (const auto& p : private_use) append(p);
  }
  return out;
}

LanguageTag parse_tag(std::string_view s) {
  if (auto g = match_grandfathered(s)) {
    return grandfathered_tag(*g);
  }
  return Parser(s).run();
}

std::optional<LanguageTag> try_parse_tag(std::string_view s) {
  try {
    return parse_tag(s);
  } catch (const TagParseError&) {
    return std::nullopt;
  }
}

LanguageTag normalize_tag(const LanguageTag& t) {
  if (!t.grandfathered.empty()) {
    if (auto g = match_grandfathered(t.grandfathered)) return grandfathered_tag(*g);
  }
  LanguageTag out;
  out.grandfathered = t.grandfathered;
  out.language = to_lower(t.language);
  for (const auto& e : t.extlangs) out.extlangs.push_back(to_lower(e));
  out.script = title_case(t.script);
  out.region = to_upper(t.region);
  for (const auto& v : t.variants) out.variants.push_back(to_lower(v));
  for (const auto& ext : t.extensions) {
    Extension e;
    e.singleton = static_cast<char>(std::tolower(static_cast<unsigned char>(ext.singleton)));
    for (const auto& s : ext.subtags) e.subtags.push_back(to_lower(s));
    out.extensions.push_back(std::move(e));
  }
  for (const auto& p : t.private_use) out.private_use.push_back(to_lower(p));
  return out;
}

MembershipTable MembershipTable::parse(std::string_view text) {
  MembershipTable table;
  std::size_t line_no = 0;
  for (std::string_view line : util::split_lines(text)) {
    ++line_no;
    line = util::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = util::split(line, '\t');
    if (fields.size() < 2) {
      throw std::runtime_error("language group table line " + std::to_string(line_no) +
                               ": expected subtag<TAB>group");
    }
    const auto group = target_group_from_string(util::trim(fields[1]));
    if (!group) {
      throw std::runtime_error("language group table line " + std::to_string(line_no) +
                               ": unknown group '" + std::string(fields[1]) + "'");
    }
    table.table_[to_lower(util::trim(fields[0]))] = *group;
  }
  return table;
}

MembershipTable MembershipTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open language group table: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const MembershipTable& MembershipTable::builtin() {
  static const MembershipTable table = parse(embedded::language_groups_tsv());
  return table;
}

std::optional<TargetGroup> MembershipTable::lookup(std::string_view subtag) const {
  const auto it = table_.find(to_lower(subtag));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::optional<TargetGroup> group_of(const LanguageTag& t, const MembershipTable& table) {
  if (t.language.empty() && t.grandfathered.empty()) {
    if (t.private_use.size() >= 2 && t.private_use[0] == "code") return TargetGroup::Programming;
    return std::nullopt;
  }
  for (const auto& e : t.extlangs) {
    if (auto g = table.lookup(e)) return g;
  }
  if (t.language.empty()) return std::nullopt;
  return table.lookup(t.language);
}

}  // namespace catalogue::langtag
