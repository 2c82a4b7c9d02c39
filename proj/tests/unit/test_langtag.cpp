#include <doctest.h>

#include <cctype>
#include <random>

#include "abnf_oracle.hpp"
#include "catalogue/langtag.hpp"
#include "tag_gen.hpp"

using namespace catalogue::langtag;
using catalogue::testing::abnf_well_formed;

namespace {
bool util_equal_ignoring_case(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("oracle agrees with hand-checked RFC 5646 examples") {
  for (const char* ok : {"en", "zh-Hant-TW", "sr-Latn-RS", "de-CH-1901", "sl-rozaj-biske",
                         "zh-yue-HK", "x-whatever", "qaa-Qaaa-QM-x-southern", "en-US-u-islamcal",
                         "es-419", "i-klingon", "zh-min-nan", "en-a-myext-b-another"}) {
    CHECK_MESSAGE(abnf_well_formed(ok), ok);
  }
  for (const char* bad : {"", "a-b", "de-419-DE", "a-DE", "ar-a-aaa-b-bbb-a-ccc-x", "en--US",
                          "abcdefghi", "en-x", "en-a", "1en"}) {
    CHECK_MESSAGE(!abnf_well_formed(bad), bad);
  }
}

TEST_CASE("parse_tag: minimal and structured tags") {
  const auto en = parse_tag("en");
  CHECK(en.language == "en");
  CHECK(en.script.empty());
  CHECK(en.region.empty());
  CHECK(en.str() == "en");

  const auto zh = parse_tag("zh-Hant-TW");
  CHECK(zh.language == "zh");
  CHECK(zh.script == "Hant");
  CHECK(zh.region == "TW");
  CHECK(abnf_well_formed("zh-Hant-TW"));

  const auto full = parse_tag("EN-latn-us-1994-A-ext1-X-Priv");
  CHECK(full.str() == "en-Latn-US-1994-a-ext1-x-priv");
  REQUIRE(full.extensions.size() == 1);
  CHECK(full.extensions[0].singleton == 'a');
  CHECK(full.private_use == std::vector<std::string>{"priv"});

  const auto ext = parse_tag("zh-yue-HK");
  CHECK(ext.extlangs == std::vector<std::string>{"yue"});
  CHECK(ext.region == "HK");
}

TEST_CASE("parse_tag: errors name the first offending subtag") {
  try {
    parse_tag("a-b");
    FAIL("expected a parse error");
  } catch (const TagParseError& e) {
    CHECK(e.subtag_index() == 1);
    CHECK(e.offset() == 0);
    CHECK(e.subtag() == "a");
  }
  CHECK(!abnf_well_formed("a-b"));

  try {
    parse_tag("en-US-abc");
    FAIL("expected a parse error");
  } catch (const TagParseError& e) {
    CHECK(e.subtag_index() == 3);
    CHECK(e.offset() == 6);
  }

  try {
    parse_tag("en-a");
    FAIL("expected a parse error");
  } catch (const TagParseError& e) {
    CHECK(e.subtag_index() == 2);
  }

  CHECK_THROWS_AS(parse_tag(""), TagParseError);
  CHECK_THROWS_AS(parse_tag("en-"), TagParseError);
  CHECK_THROWS_AS(parse_tag("x"), TagParseError);
}

TEST_CASE("grandfathered tags are accepted in registered form") {
  CHECK(parse_tag("I-KLINGON").str() == "i-klingon");
  CHECK(parse_tag("en-gb-oed").str() == "en-GB-oed");
  CHECK(parse_tag("zh-min-nan").is_grandfathered());
  CHECK(parse_tag("zh-min-nan").language == "zh");
}

TEST_CASE("normalize_tag: casing conventions") {
  CHECK(normalize_tag(parse_tag("PT-br")).str() == "pt-BR");
  CHECK(normalize_tag(parse_tag("en")).str() == "en");

  LanguageTag raw;
  raw.language = "SR";
  raw.script = "lATN";
  raw.region = "rs";
  CHECK(normalize_tag(raw).str() == "sr-Latn-RS");
}

TEST_CASE("parser agrees with the ABNF oracle on generated tags") {
  std::mt19937_64 rng(20211214);
  int accepted = 0;
  int rejected = 0;
  for (int i = 0; i < 3000; ++i) {
    const std::string s =
        (i % 2 == 0) ? catalogue::testing::random_well_formed_tag(rng)
                     : catalogue::testing::random_corrupted_tag(rng);
    const bool oracle = abnf_well_formed(s);
    const auto parsed = try_parse_tag(s);
    CHECK_MESSAGE(parsed.has_value() == oracle, s);
    if (parsed) {
      ++accepted;
      const auto norm = normalize_tag(*parsed);
      CHECK(normalize_tag(norm) == norm);
      CHECK(parse_tag(norm.str()) == norm);
      CHECK(util_equal_ignoring_case(s, norm.str()));
    } else {
      ++rejected;
    }
  }
  CHECK(accepted >= 200);
  CHECK(rejected >= 200);
}

TEST_CASE("group_of uses the membership table") {
  CHECK(group_of(parse_tag("sw")) == TargetGroup::NigerCongo);
  CHECK(group_of(parse_tag("pt-BR")) == TargetGroup::Portuguese);
  CHECK(group_of(parse_tag("ja")) == std::nullopt);
  CHECK(group_of(parse_tag("hi-Deva-IN")) == TargetGroup::Indic);
  CHECK(group_of(parse_tag("ar-arz")) == TargetGroup::Arabic);
  CHECK(group_of(parse_tag("arq")) == TargetGroup::Arabic);
  CHECK(group_of(parse_tag("x-code-python")) == TargetGroup::Programming);
  CHECK(group_of(parse_tag("x-other-python")) == std::nullopt);
  CHECK(group_of(parse_tag("en-x-code-python")) == TargetGroup::English);
  CHECK(group_of(parse_tag("eu-ES")) == TargetGroup::Basque);
}

TEST_CASE("membership table parsing") {
  const auto table = MembershipTable::parse("# comment\nqaa\tBasque\r\n\nQAB\tEnglish\n");
  CHECK(table.size() == 2);
  CHECK(table.lookup("qab") == TargetGroup::English);
  CHECK(group_of(parse_tag("qaa"), table) == TargetGroup::Basque);
  CHECK_THROWS(MembershipTable::parse("xx\tKlingon\n"));
  CHECK_THROWS(MembershipTable::parse("xx\n"));
  for (TargetGroup g : kAllTargetGroups) {
    CHECK(target_group_from_string(to_string(g)) == g);
  }
}
