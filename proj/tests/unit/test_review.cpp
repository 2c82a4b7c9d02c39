#include <doctest.h>

#include <random>

#include "catalogue/review.hpp"
#include "generators.hpp"
#include "temp_dir.hpp"

using namespace catalogue;
using namespace catalogue::review;
using catalogue::testing::EntryGenerator;
using catalogue::testing::StepClock;
using catalogue::testing::TempDir;

namespace {

const Person kSubmitter{"Sam Submitter", "someone@example.org"};
const Person kValidator{"Val Idator", "validator@example.org"};

struct Fixture {
  TempDir dir;
  StepClock clk;
  store::Store store{dir.path(), clk.clock()};
  CatalogueEntry entry;

  Fixture() {
    EntryGenerator gen(21);
    entry = gen.entry(ResourceType::primary_source, "radio-archive", {});
    entry.custodian.reset();
    entry.availability->contact = "data@example.org";
    if (entry.availability->procurement == Procurement::online_direct_download) {
      entry.availability->download_url = "https://example.org/a.zip";
    }
    store.save_entry(entry, kSubmitter);
  }
};

void check_all(const store::Store& st, Session& s) {
  for (Section sec : applicable_sections(s.entry.rtype)) s = check_section(st, s, sec, std::nullopt);
}

}  // namespace

TEST_CASE("begin_validation") {
  Fixture f;
  const auto s = begin_validation(f.store, "radio-archive", kValidator);
  CHECK(s.base_version == 1);
  CHECK(s.entry == f.entry);
  CHECK(s.checks.size() == applicable_sections(ResourceType::primary_source).size());
  for (const auto& [sec, ok] : s.checks) CHECK(!ok);
  CHECK(!s.self_validation);

  try {
    begin_validation(f.store, "missing", kValidator);
    FAIL("expected not-found");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_found);
  }
}

TEST_CASE("check_section") {
  Fixture f;
  auto s = begin_validation(f.store, "radio-archive", kValidator);

  SUBCASE("without edit") {
    auto after = check_section(f.store, s, Section::general, std::nullopt);
    CHECK(after.checks.at("general"));
    CHECK(after.entry == s.entry);
    CHECK(after.edited.empty());
    CHECK(check_section(f.store, after, Section::general, std::nullopt).checks == after.checks);
  }
  SUBCASE("edit that breaks a rule") {
    Json general = section_to_json(s.entry, Section::general);
    general["description"] = "";
    try {
      check_section(f.store, s, Section::general, general);
      FAIL("expected validation-failed");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::validation_failed);
      REQUIRE(e.report());
      CHECK(e.report()->has_rule("description-required"));
    }
    CHECK(!s.checks.at("general"));
  }
  SUBCASE("edit that does not parse") {
    try {
      check_section(f.store, s, Section::media, Json{{"media", Json::array({"smell"})}});
      FAIL("expected validation-failed");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::validation_failed);
    }
  }
  SUBCASE("inapplicable section") {
    try {
      check_section(f.store, s, Section::dataset_sources, std::nullopt);
      FAIL("expected section-not-applicable");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::section_not_applicable);
    }
  }
  SUBCASE("all sections make the session completable") {
    CHECK(!s.completable());
    check_all(f.store, s);
    CHECK(s.completable());
  }
}

TEST_CASE("finalize_validation") {
  Fixture f;

  SUBCASE("complete with one edit creates a version") {
    auto s = begin_validation(f.store, "radio-archive", kValidator);
    Json general = section_to_json(s.entry, Section::general);
    general["description"] = "Reviewed description.";
    s = check_section(f.store, s, Section::general, general);
    check_all(f.store, s);
    const auto rec = finalize_validation(f.store, s);
    CHECK(rec.complete);
    CHECK(rec.edited_sections == std::set<std::string>{"general"});
    REQUIRE(rec.result_version);
    CHECK(*rec.result_version == 2);
    const auto versions = f.store.list_versions("radio-archive");
    REQUIRE(versions.size() == 2);
    CHECK(versions[1].author == kValidator);
    CHECK(entry_from_json(versions[1].payload).general.description == "Reviewed description.");
    CHECK(versions[0].payload == entry_to_canonical_json(f.entry));
    const auto st = status(f.store, "radio-archive");
    CHECK(st.validated);
    CHECK(st.latest_validated);
  }
  SUBCASE("an unchecked section leaves the entry unvalidated") {
    auto s = begin_validation(f.store, "radio-archive", kValidator);
    s = check_section(f.store, s, Section::general, std::nullopt);
    const auto rec = finalize_validation(f.store, s);
    CHECK(!rec.complete);
    CHECK(!rec.result_version);
    CHECK(f.store.list_versions("radio-archive").size() == 1);
    const auto st = status(f.store, "radio-archive");
    CHECK(!st.validated);
    CHECK(st.records.size() == 1);
  }
  SUBCASE("two complete validations are both listed in save order") {
    for (int i = 0; i < 2; ++i) {
      auto s = begin_validation(f.store, "radio-archive", kValidator);
      check_all(f.store, s);
      finalize_validation(f.store, s);
    }
    const auto st = status(f.store, "radio-archive");
    REQUIRE(st.records.size() == 2);
    CHECK(st.records[0].record_no == 1);
    CHECK(st.records[1].record_no == 2);
    CHECK(st.records[0].saved_at <= st.records[1].saved_at);
    CHECK(st.validated);
  }
  SUBCASE("a later edit by someone else makes the validation stale") {
    auto s = begin_validation(f.store, "radio-archive", kValidator);
    check_all(f.store, s);
    finalize_validation(f.store, s);
    auto e = f.entry;
    e.general.name = "Renamed";
    f.store.save_entry(e, kSubmitter);
    const auto st = status(f.store, "radio-archive");
    CHECK(st.validated);
    CHECK(!st.latest_validated);
  }
}

TEST_CASE("self-validation is recorded and optionally refused") {
  Fixture f;
  auto s = begin_validation(f.store, "radio-archive", kSubmitter);
  CHECK(s.self_validation);
  check_all(f.store, s);
  CHECK(finalize_validation(f.store, s).self_validation);

  Policy strict;
  strict.forbid_self_validation = true;
  try {
    begin_validation(f.store, "radio-archive", kSubmitter, strict);
    FAIL("expected self-validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::self_validation);
  }
  CHECK_NOTHROW(begin_validation(f.store, "radio-archive", kValidator, strict));
}

TEST_CASE("desk sessions refuse a second finalize") {
  Fixture f;
  Desk desk(f.store);
  const auto s = desk.begin("radio-archive", kValidator);
  for (Section sec : applicable_sections(ResourceType::primary_source)) {
    desk.check(s.id, sec, std::nullopt);
  }
  CHECK(desk.get(s.id).completable());
  desk.finalize(s.id);
  try {
    desk.finalize(s.id);
    FAIL("expected conflicting-finalize");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::conflicting_finalize);
  }
  CHECK_THROWS_AS(desk.get("s999"), Error);
  CHECK(f.store.validation_records("radio-archive").size() == 1);
}

TEST_CASE("review workflow property: status tracks complete records; history only grows") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 20; ++round) {
    Fixture f;
    std::size_t records = 0;
    int versions = 1;
    bool any_complete = false;
    std::vector<std::string> earlier_payloads = {f.store.list_versions("radio-archive")[0].payload};
    for (int step = 0; step < 6; ++step) {
      auto s = begin_validation(f.store, "radio-archive", kValidator);
      bool all = true;
      bool edited = false;
      for (Section sec : applicable_sections(ResourceType::primary_source)) {
        if (rng() % 4 == 0) {
          all = false;
          continue;
        }
        std::optional<Json> edit;
        if (sec == Section::general && rng() % 3 == 0) {
          Json g = section_to_json(s.entry, Section::general);
          g["description"] = "Edit " + std::to_string(round) + "-" + std::to_string(step);
          edit = g;
          edited = true;
        }
        s = check_section(f.store, s, sec, edit);
      }
      const auto rec = finalize_validation(f.store, s);
      ++records;
      if (edited) ++versions;
      any_complete = any_complete || all;
      CHECK(rec.complete == all);

      const auto st = status(f.store, "radio-archive");
      CHECK(st.validated == any_complete);
      CHECK(st.records.size() == records);
      const auto vs = f.store.list_versions("radio-archive");
      CHECK(static_cast<int>(vs.size()) == versions);
      for (std::size_t i = 0; i < earlier_payloads.size(); ++i) {
        CHECK(vs[i].payload == earlier_payloads[i]);
      }
      earlier_payloads.clear();
      for (const auto& v : vs) earlier_payloads.push_back(v.payload);
    }
  }
}
