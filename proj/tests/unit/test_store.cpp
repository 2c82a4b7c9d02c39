#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "catalogue/csv.hpp"
#include "catalogue/store.hpp"
#include "generators.hpp"
#include "temp_dir.hpp"

using namespace catalogue;
using namespace catalogue::store;
using catalogue::testing::EntryGenerator;
using catalogue::testing::StepClock;
using catalogue::testing::TempDir;

namespace {

const Person kAuthor{"Test Author", "author@example.org"};

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(CATALOGUE_TEST_FIXTURES) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CatalogueEntry le_monde() {
  CatalogueEntry e;
  e.rtype = ResourceType::primary_source;
  e.general = {"le-monde", "Le Monde", "https://www.lemonde.fr", "French daily newspaper archive."};
  LanguageSelection fr;
  fr.group = TargetGroup::French;
  fr.tag = langtag::parse_tag("fr");
  e.languages = {fr};
  e.locations = {geo::resolve_location("France")};
  Custodian c;
  c.name = "Groupe Le Monde";
  c.ctype = CustodianType::commercial;
  c.location = geo::resolve_location("France");
  c.contact = "archives@example.org";
  e.custodian = c;
  Availability a;
  a.procurement = Procurement::contact_custodian_only;
  a.license.has_explicit_terms = ExplicitTerms::yes;
  a.license.properties = {LicenseProperty::copyright};
  a.pii.contains = PiiContains::yes;
  a.pii.likelihood_of(PiiCategory::general) = PiiLikelihood::very_likely;
  a.pii.kinds_of(PiiCategory::general) = {{PiiKind::names, {}}};
  e.availability = a;
  PrimarySourceType st;
  st.kind = {SourceKind::collection, {}};
  st.collection_type = OpenChoice<CollectionType>{CollectionType::news_articles, {}};
  e.source_type = st;
  MediaSpec m;
  m.media = {MediaType::text};
  m.size_unit = {SizeUnit::articles, {}};
  m.instance_count_bucket.exponent = 5;
  m.words_per_instance_bucket.exponent = 2;
  e.media = m;
  e.provenance.submitter = {"Ada Obi", "ada@example.org"};
  return e;
}

CatalogueEntry masakhane() {
  CatalogueEntry e;
  e.rtype = ResourceType::organization;
  e.general = {"masakhane", "Masakhane", "https://www.masakhane.io",
               "Grassroots NLP community for Africa, by Africans."};
  LanguageSelection nc;
  nc.group = TargetGroup::NigerCongo;
  LanguageSelection yo;
  yo.group = TargetGroup::NigerCongo;
  yo.tag = langtag::parse_tag("yo");
  e.languages = {nc, yo};
  e.locations = {geo::resolve_location("Sub-Saharan Africa")};
  Custodian c;
  c.name = "Masakhane";
  c.ctype = CustodianType::community;
  e.custodian = c;
  e.provenance.submitter = {"Ada Obi", "ada@example.org"};
  return e;
}

CatalogueEntry fr_news_corpus() {
  CatalogueEntry e;
  e.rtype = ResourceType::processed_dataset;
  e.general = {"fr-news-corpus", "French news corpus", std::nullopt,
               "Corpus built from \"Le Monde\" articles, 2010-2020."};
  LanguageSelection fr;
  fr.tag = langtag::parse_tag("fr");
  e.languages = {fr};
  e.locations = {geo::resolve_location("France")};
  Availability a;
  a.procurement = Procurement::online_direct_download;
  a.download_url = "https://example.org/fr-news.tar.gz";
  a.contact = "corpus@example.org";
  a.license.has_explicit_terms = ExplicitTerms::yes;
  a.license.properties = {LicenseProperty::open_license, LicenseProperty::research_use};
  a.license.named_licenses = {"CC-BY-4.0"};
  a.pii.contains = PiiContains::no;
  a.pii.no_pii_justification = OpenChoice<NoPiiJustification>::other("derived from published newspapers");
  e.availability = a;
  DatasetSources d;
  d.originality = Originality::from_primary_sources;
  d.sources_investigable = SourcesInvestigable::documented;
  d.linked_primary_uids = {"le-monde"};
  e.dataset_sources = d;
  MediaSpec m;
  m.media = {MediaType::text};
  m.size_unit = OpenChoice<SizeUnit>::other("paragraphs");
  m.instance_count_bucket.exponent = 6;
  m.words_per_instance_bucket.exponent = 1;
  e.media = m;
  e.provenance.submitter = {"Lin Wei", "lin@example.org"};
  return e;
}

/// Drops the answers the flat CSV form cannot carry.
CatalogueEntry csv_projection(CatalogueEntry e) {
  for (auto& sel : e.languages) sel.variety_comment.reset();
  if (e.dataset_sources) {
    e.dataset_sources->source_types.clear();
    e.dataset_sources->source_license.reset();
  }
  return e;
}

std::string header_line() {
  std::string h;
  for (auto c : csv::columns()) {
    if (!h.empty()) h += ',';
    h += c;
  }
  return h + "\n";
}

/// Independent filter evaluation used as the search oracle.
bool oracle_match(const Filter& f, const CatalogueEntry& e,
                  const std::map<std::string, CatalogueEntry>& all) {
  if (f.rtype && e.rtype != *f.rtype) return false;
  if (f.group) {
    bool hit = false;
    for (const auto& sel : e.languages) {
      if (sel.group == f.group) hit = true;
      if (!sel.group && sel.tag && langtag::group_of(*sel.tag) == f.group) hit = true;
    }
    if (!hit) return false;
  }
  if (f.macroarea) {
    bool hit = false;
    for (const auto& l : e.locations) hit = hit || l.macroarea == f.macroarea;
    if (!hit) return false;
  }
  if (f.license_property) {
    if (!e.availability) return false;
    const auto& props = e.availability->license.properties;
    if (std::find(props.begin(), props.end(), *f.license_property) == props.end()) return false;
  }
  if (f.media) {
    if (!e.media) return false;
    if (std::find(e.media->media.begin(), e.media->media.end(), *f.media) == e.media->media.end()) {
      return false;
    }
  }
  if (f.custodian_type) {
    if (!e.custodian) return false;
    std::optional<CustodianType> t = e.custodian->ctype;
    if (!t && e.custodian->link_uid) {
      const auto it = all.find(*e.custodian->link_uid);
      if (it != all.end() && it->second.rtype == ResourceType::organization &&
          it->second.custodian) {
        t = it->second.custodian->ctype;
      }
    }
    if (t != f.custodian_type) return false;
  }
  if (f.pii_contains && (!e.availability || e.availability->pii.contains != f.pii_contains)) {
    return false;
  }
  if (f.text) {
    auto lower = [](std::string s) {
      for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      return s;
    };
    const std::string needle = lower(*f.text);
    if (lower(e.general.name).find(needle) == std::string::npos &&
        lower(e.general.description).find(needle) == std::string::npos) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("timestamps format and parse") {
  const auto t = parse_timestamp("2022-05-01T12:34:56.789Z");
  REQUIRE(t);
  CHECK(format_timestamp(*t) == "2022-05-01T12:34:56.789Z");
  CHECK(!parse_timestamp("2022-05-01 12:34:56"));
  CHECK(!parse_timestamp("2022-05-01T12:34:56.789"));
}

TEST_CASE("save_entry assigns versions per uid") {
  TempDir dir;
  StepClock clk;
  Store s(dir.path(), clk.clock());
  auto e = le_monde();
  const auto r1 = s.save_entry(e, kAuthor);
  CHECK(r1.uid == "le-monde");
  CHECK(r1.version_no == 1);
  e.general.description = "Archive of the French daily.";
  const auto r2 = s.save_entry(e, kAuthor);
  CHECK(r2.version_no == 2);
  const auto versions = s.list_versions("le-monde");
  REQUIRE(versions.size() == 2);
  CHECK(versions[0].version_no == 1);
  CHECK(versions[1].version_no == 2);
  CHECK(versions[0].saved_at <= versions[1].saved_at);
  CHECK(versions[1].payload == entry_to_canonical_json(e));
  CHECK(s.version("le-monde", 1).payload == entry_to_canonical_json(le_monde()));
  CHECK(std::filesystem::exists(dir.path() / "entries" / "le-monde" / "v2.json"));
}

TEST_CASE("save_entry rejects invalid entries with the report") {
  TempDir dir;
  Store s(dir.path());
  auto e = masakhane();
  e.media = le_monde().media;
  try {
    s.save_entry(e, kAuthor);
    FAIL("expected validation-failed");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::validation_failed);
    REQUIRE(err.report());
    CHECK(err.report()->has_rule("section-applicability"));
  }
  CHECK(s.snapshot()->size() == 0);
}

TEST_CASE("list_versions of an unknown uid is not-found") {
  TempDir dir;
  Store s(dir.path());
  try {
    s.list_versions("nope");
    FAIL("expected not-found");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_found);
  }
  CHECK_THROWS_AS(s.version("nope", 1), Error);
}

TEST_CASE("saved_at never decreases even when the clock runs backwards") {
  TempDir dir;
  StepClock backwards(-5000);
  Store s(dir.path(), backwards.clock());
  auto e = masakhane();
  for (int i = 0; i < 5; ++i) {
    e.general.description = "Revision " + std::to_string(i);
    s.save_entry(e, kAuthor);
  }
  const auto versions = s.list_versions("masakhane");
  for (std::size_t i = 1; i < versions.size(); ++i) {
    CHECK(versions[i - 1].saved_at <= versions[i].saved_at);
  }
}

TEST_CASE("interleaved saves keep per-uid histories separate") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 10; ++round) {
    TempDir dir;
    StepClock clk;
    Store s(dir.path(), clk.clock());
    EntryGenerator gen(round);
    std::map<std::string, std::vector<std::string>> expected;
    const std::vector<std::string> uids = {"aaa", "bbb", "ccc", "ddd"};
    for (int step = 0; step < 30; ++step) {
      const std::string& uid = uids[rng() % uids.size()];
      auto e = gen.entry(ResourceType::organization, uid, {});
      s.save_entry(e, kAuthor);
      expected[uid].push_back(entry_to_canonical_json(e));
    }
    for (const auto& [uid, payloads] : expected) {
      const auto versions = s.list_versions(uid);
      REQUIRE(versions.size() == payloads.size());
      for (std::size_t i = 0; i < versions.size(); ++i) {
        CHECK(versions[i].uid == uid);
        CHECK(versions[i].version_no == static_cast<int>(i) + 1);
        CHECK(versions[i].payload == payloads[i]);
      }
    }
  }
}

TEST_CASE("a reopened store sees the same data") {
  TempDir dir;
  EntryGenerator gen(17);
  const auto entries = gen.catalogue(20);
  std::string exported;
  {
    Store s(dir.path());
    for (const auto& e : entries) s.save_entry(e, kAuthor);
    s.save_entry(entries[0], kAuthor);
    exported = s.export_catalogue();
  }
  Store again(dir.path());
  CHECK(again.export_catalogue() == exported);
  CHECK(again.list_versions(entries[0].uid()).size() == 2);
  CHECK(again.snapshot()->size() == entries.size());
}

TEST_CASE("export_catalogue") {
  TempDir dir;
  Store s(dir.path());
  CHECK(s.export_catalogue() == "[]");

  s.save_entry(masakhane(), kAuthor);
  s.save_entry(le_monde(), kAuthor);
  CHECK(s.export_catalogue() == "[" + entry_to_canonical_json(le_monde()) + "," +
                                    entry_to_canonical_json(masakhane()) + "]");
}

TEST_CASE("export -> import -> export is byte-identical") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    EntryGenerator gen(seed);
    auto entries = gen.catalogue(25);
    std::shuffle(entries.begin(), entries.end(), gen.rng());
    TempDir a;
    Store first(a.path());
    for (const auto& e : entries) {
      CatalogueIndex idx = make_index(entries);
      REQUIRE(validate_entry(e, idx).accepted());
    }
    const auto imported = first.import_json(
        [&] {
          Json arr = Json::array();
          for (const auto& e : entries) arr.push_back(entry_to_json(e));
          return arr.dump();
        }(),
        kAuthor);
    CHECK(imported.errors.empty());
    CHECK(imported.saved.size() == entries.size());
    const std::string once = first.export_catalogue();

    TempDir b;
    Store second(b.path());
    const auto again = second.import_json(once, kAuthor);
    CHECK(again.errors.empty());
    CHECK(second.export_catalogue() == once);
  }
}

TEST_CASE("import_json reports bad items and keeps the rest") {
  TempDir dir;
  Store s(dir.path());
  Json arr = Json::array();
  arr.push_back(entry_to_json(masakhane()));
  Json bad = entry_to_json(le_monde());
  bad["rtype"] = "primary sorce";
  arr.push_back(bad);
  auto invalid = le_monde();
  invalid.general.uid = "le-monde-2";
  invalid.general.description.clear();
  arr.push_back(entry_to_json(invalid));
  const auto r = s.import_json(arr.dump(), kAuthor);
  REQUIRE(r.saved.size() == 1);
  CHECK(r.saved[0].uid == "masakhane");
  REQUIRE(r.errors.size() == 2);
  CHECK(r.errors[0].row == 2);
  CHECK(r.errors[0].rule == "parse-error");
  CHECK(r.errors[0].field_path == "rtype");
  CHECK(r.errors[1].row == 3);
  CHECK(r.errors[1].rule == "description-required");
  CHECK_THROWS_AS(s.import_json("{}", kAuthor), Error);
}

TEST_CASE("search") {
  TempDir dir;
  Store s(dir.path());
  s.save_entry(masakhane(), kAuthor);
  s.save_entry(le_monde(), kAuthor);
  s.save_entry(fr_news_corpus(), kAuthor);

  CHECK(s.search({}) == std::vector<std::string>{"fr-news-corpus", "le-monde", "masakhane"});
  Filter f;
  f.rtype = ResourceType::organization;
  f.media = MediaType::text;
  CHECK(s.search(f).empty());

  Filter g;
  g.group = TargetGroup::French;
  CHECK(s.search(g) == std::vector<std::string>{"fr-news-corpus", "le-monde"});
  Filter t;
  t.text = "AFRICANS";
  CHECK(s.search(t) == std::vector<std::string>{"masakhane"});
  Filter lic;
  lic.license_property = LicenseProperty::open_license;
  CHECK(s.search(lic) == std::vector<std::string>{"fr-news-corpus"});
}

TEST_CASE("search agrees with a linear-scan oracle on random filters") {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    TempDir dir;
    Store s(dir.path());
    EntryGenerator gen(seed + 100);
    const auto entries = gen.catalogue(30);
    std::map<std::string, CatalogueEntry> all;
    for (const auto& e : entries) {
      s.save_entry(e, kAuthor);
      all[e.uid()] = e;
    }
    for (int q = 0; q < 200; ++q) {
      Filter f;
      auto coin = [&] { return rng() % 3 == 0; };
      auto pick = [&](const auto& values) { return values[rng() % values.size()]; };
      if (coin()) f.rtype = pick(vocab_values<ResourceType>());
      if (coin()) f.group = pick(langtag::kAllTargetGroups);
      if (coin()) f.macroarea = pick(geo::kAllMacroareas);
      if (coin()) f.license_property = pick(vocab_values<LicenseProperty>());
      if (coin()) f.media = pick(vocab_values<MediaType>());
      if (coin()) f.custodian_type = pick(vocab_values<CustodianType>());
      if (coin()) f.pii_contains = pick(vocab_values<PiiContains>());
      if (rng() % 6 == 0) f.text = pick(std::vector<std::string>{"news", "RADIO", "entry-01", "zzz"});
      std::vector<std::string> expected;
      for (const auto& [uid, e] : all) {
        if (oracle_match(f, e, all)) expected.push_back(uid);
      }
      CHECK(s.search(f) == expected);
    }
  }
}

TEST_CASE("csv: three-row fixture matches hand-built entries") {
  TempDir dir;
  Store s(dir.path());
  const auto r = s.import_csv(fixture("three_rows.csv"), kAuthor);
  CHECK(r.errors.empty());
  REQUIRE(r.saved.size() == 3);
  const auto snap = s.snapshot();
  CHECK(entry_to_canonical_json(*snap->entry("masakhane")) == entry_to_canonical_json(masakhane()));
  CHECK(entry_to_canonical_json(*snap->entry("le-monde")) == entry_to_canonical_json(le_monde()));
  CHECK(entry_to_canonical_json(*snap->entry("fr-news-corpus")) ==
        entry_to_canonical_json(fr_news_corpus()));
}

TEST_CASE("csv: a bad row is rejected while the others are saved") {
  std::string text = fixture("three_rows.csv");
  const auto pos = text.find("commercial");
  text.replace(pos, std::string("commercial").size(), "guild");
  TempDir dir;
  Store s(dir.path());
  const auto r = s.import_csv(text, kAuthor);
  CHECK(r.saved.size() == 1);
  REQUIRE(r.errors.size() >= 1);
  CHECK(r.errors[0].row == 3);
  CHECK(r.errors[0].rule == "parse-error");
  CHECK(r.errors[0].field_path == "custodian.type");
  // The dataset links to the rejected primary source.
  bool dataset_flagged = false;
  for (const auto& e : r.errors) dataset_flagged = dataset_flagged || e.row == 4;
  CHECK(dataset_flagged);
}

TEST_CASE("csv: rule violations carry the rule id") {
  std::string text = fixture("three_rows.csv");
  text.replace(text.find("online_direct_download,https://example.org/fr-news.tar.gz"),
               std::string("online_direct_download,https://example.org/fr-news.tar.gz").size(),
               "online_direct_download,");
  TempDir dir;
  Store s(dir.path());
  const auto r = s.import_csv(text, kAuthor);
  CHECK(r.saved.size() == 2);
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].row == 4);
  CHECK(r.errors[0].rule == "download-url-required");
}

TEST_CASE("csv: header handling") {
  TempDir dir;
  Store s(dir.path());
  const auto r = s.import_csv(header_line(), kAuthor);
  CHECK(r.saved.empty());
  CHECK(r.errors.empty());
  try {
    s.import_csv("uid,name\nabc,def\n", kAuthor);
    FAIL("expected malformed-csv");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::malformed_csv);
  }
  CHECK_THROWS_AS(s.import_csv("", kAuthor), Error);
}

TEST_CASE("csv: record parsing") {
  const auto recs = csv::parse("a,\"b,c\",\"d\"\"e\"\r\n\"multi\nline\",x,\n");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].fields == std::vector<std::string>{"a", "b,c", "d\"e"});
  CHECK(recs[1].line == 2);
  CHECK(recs[1].fields == std::vector<std::string>{"multi\nline", "x", ""});
  CHECK_THROWS_AS(csv::parse("\"open"), Error);
  const std::vector<std::string> row = {"plain", "with,comma", "with \"quote\""};
  CHECK(csv::parse(csv::format_row(row))[0].fields == row);
}

TEST_CASE("csv: exported rows re-import to the same payloads") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EntryGenerator gen(seed + 500);
    std::vector<CatalogueEntry> entries;
    for (const auto& e : gen.catalogue(40)) entries.push_back(csv_projection(e));
    for (const auto& e : entries) CHECK(csv::csv_addressable(e));

    TempDir a;
    Store first(a.path());
    first.import_json(
        [&] {
          Json arr = Json::array();
          for (const auto& e : entries) arr.push_back(entry_to_json(e));
          return arr.dump();
        }(),
        kAuthor);
    const auto snap = first.snapshot();
    const std::string text = csv::entries_to_csv(snap->entries());

    TempDir b;
    Store second(b.path());
    const auto r = second.import_csv(text, kAuthor);
    CHECK(r.errors.empty());
    CHECK(second.export_catalogue() == first.export_catalogue());
  }
}

TEST_CASE("concurrent writers and readers") {
  TempDir dir;
  Store s(dir.path());
  constexpr int kThreads = 8;
  constexpr int kSaves = 15;
  std::atomic<bool> stop{false};
  std::atomic<int> torn{0};
  std::thread reader([&] {
    while (!stop) {
      const auto snap = s.snapshot();
      const auto exported = Json::parse(s.export_catalogue());
      if (!exported.is_array()) ++torn;
      for (const auto& [uid, st] : snap->states()) {
        if (st->versions.back().payload != entry_to_canonical_json(st->latest)) ++torn;
        for (std::size_t i = 0; i < st->versions.size(); ++i) {
          if (st->versions[i].version_no != static_cast<int>(i) + 1) ++torn;
        }
      }
    }
  });
  std::vector<std::thread> writers;
  for (int t = 0; t < kThreads; ++t) {
    writers.emplace_back([&, t] {
      EntryGenerator gen(static_cast<std::uint64_t>(t));
      for (int i = 0; i < kSaves; ++i) {
        // Two threads share each uid.
        const std::string uid = "shared-" + std::to_string(t / 2);
        s.save_entry(gen.entry(ResourceType::organization, uid, {}), kAuthor);
      }
    });
  }
  for (auto& w : writers) w.join();
  stop = true;
  reader.join();
  CHECK(torn == 0);
  for (int u = 0; u < kThreads / 2; ++u) {
    const auto versions = s.list_versions("shared-" + std::to_string(u));
    REQUIRE(versions.size() == 2 * kSaves);
    for (std::size_t i = 0; i < versions.size(); ++i) {
      CHECK(versions[i].version_no == static_cast<int>(i) + 1);
    }
  }
  Store reopened(dir.path());
  CHECK(reopened.export_catalogue() == s.export_catalogue());
}
