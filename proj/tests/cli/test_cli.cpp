#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "catalogue/analytics.hpp"
#include "catalogue/store.hpp"
#include "temp_dir.hpp"

using namespace catalogue;
using catalogue::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::string& args, const fs::path& scratch) {
  const fs::path err = scratch / "stderr.txt";
  const std::string cmd = "cd " + quote(scratch.string()) + " && " + quote(CATALOGUE_CLI) + " " + args + " 2>" + quote(err.string());
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = store::read_file(err);
  return r;
}

fs::path fixture(const std::string& name) { return fs::path(CATALOGUE_TEST_FIXTURES) / name; }
fs::path golden(const std::string& name) { return fs::path(CATALOGUE_TEST_GOLDEN) / "desk25" / name; }

struct Desk {
  TempDir tmp;
  fs::path data = tmp.path() / "data";
  Desk() {
    const auto r = run("import " + quote(fixture("desk25.csv").string()) + " --data-dir " + quote(data.string()),
                       tmp.path());
    REQUIRE(r.code == 0);
  }
};

}  // namespace

TEST_CASE("report output matches the golden files") {
  Desk desk;
  const std::string dir = " --data-dir " + quote(desk.data.string());
  for (const char* table : {"types", "languages", "locations", "custodian-types", "custodian-locations",
                            "licenses", "pii", "singletons", "type-by-language-group"}) {
    for (const char* fmt : {"csv", "md", "json"}) {
      CAPTURE(table);
      CAPTURE(fmt);
      const auto r = run(std::string("report --table ") + table + " --format " + fmt + dir, desk.tmp.path());
      CHECK(r.code == 0);
      CHECK(r.out == store::read_file(golden(std::string(table) + "." + fmt)));
    }
  }
  for (const char* group : {"NigerCongo", "English"}) {
    const auto r = run(std::string("report --table language-regions --group ") + group + " --format md" + dir,
                       desk.tmp.path());
    CHECK(r.out == store::read_file(golden(std::string("language-regions.") + group + ".md")));
  }
  CHECK(run("report --table singletons --exclude-target-groups --format csv" + dir, desk.tmp.path()).out ==
        store::read_file(golden("singletons.excluded.csv")));
  CHECK(run("report --table custodian-locations --top 3 --format csv" + dir, desk.tmp.path()).out ==
        store::read_file(golden("custodian-locations.top3.csv")));
}

TEST_CASE("report output is byte-identical to the emitters") {
  Desk desk;
  store::Store st(desk.data);
  const auto facts = analytics::build_facts(*st.snapshot());
  const auto r = run("report --table licenses --format md --data-dir " + quote(desk.data.string()), desk.tmp.path());
  CHECK(r.out == analytics::to_markdown(analytics::license_property_distribution(facts)));
  const auto c = run("report --table pii --format csv --data-dir " + quote(desk.data.string()), desk.tmp.path());
  CHECK(c.out == analytics::to_csv(analytics::pii_distribution(facts)));
}

TEST_CASE("report --from an export file equals the data-dir report") {
  Desk desk;
  const fs::path exported = desk.tmp.path() / "export.json";
  REQUIRE(run("export --data-dir " + quote(desk.data.string()) + " -o " + quote(exported.string()),
              desk.tmp.path()).code == 0);
  const auto from = run("report --table languages --format csv --from " + quote(exported.string()), desk.tmp.path());
  CHECK(from.code == 0);
  CHECK(from.out == store::read_file(golden("languages.csv")));
}

TEST_CASE("export, import into a fresh directory, export again") {
  Desk desk;
  const auto first = run("export --data-dir " + quote(desk.data.string()), desk.tmp.path());
  CHECK(first.code == 0);
  const fs::path file = desk.tmp.path() / "first.json";
  std::ofstream(file, std::ios::binary) << first.out;
  const fs::path fresh = desk.tmp.path() / "fresh";
  CHECK(run("import " + quote(file.string()) + " --data-dir " + quote(fresh.string()), desk.tmp.path()).code == 0);
  const auto second = run("export --data-dir " + quote(fresh.string()), desk.tmp.path());
  CHECK(second.out == first.out);
}

TEST_CASE("validate") {
  TempDir tmp;
  const auto bad = run("validate " + quote(fixture("org_with_media.json").string()), tmp.path());
  CHECK(bad.code == 1);
  CHECK(bad.err.find("section-applicability") != std::string::npos);

  const auto good = run("validate " + quote(fixture("org_clean.json").string()), tmp.path());
  CHECK(good.code == 0);
  CHECK(good.err.empty());

  const fs::path broken = tmp.path() / "broken.json";
  std::ofstream(broken) << "{\"rtype\": \"spaceship\"}";
  const auto parse = run("validate " + quote(broken.string()), tmp.path());
  CHECK(parse.code == 1);
  CHECK(parse.err.find("parse-error") != std::string::npos);

  CHECK(run("validate " + quote((tmp.path() / "absent.json").string()), tmp.path()).code == 2);
}

TEST_CASE("exit codes for usage and io failures") {
  TempDir tmp;
  CHECK(run("", tmp.path()).code == 3);
  CHECK(run("report", tmp.path()).code == 3);
  CHECK(run("report --table nonsense", tmp.path()).code == 3);
  CHECK(run("report --table language-regions --data-dir " + quote(tmp.path().string()), tmp.path()).code == 3);
  CHECK(run("report --table types --data-dir " + quote((tmp.path() / "none").string()), tmp.path()).code == 2);
  CHECK(run("export --data-dir " + quote((tmp.path() / "none").string()), tmp.path()).code == 2);

  const fs::path bad_csv = tmp.path() / "bad.csv";
  std::ofstream(bad_csv) << "a,b\n1,2\n";
  CHECK(run("import " + quote(bad_csv.string()) + " --data-dir " + quote((tmp.path() / "d").string()),
            tmp.path()).code == 1);
}

TEST_CASE("data dir falls back to the environment") {
  Desk desk;
  const auto r = run("report --table types --format csv", desk.tmp.path());
  CHECK(r.code == 2);
  setenv("CATALOGUE_DATA_DIR", desk.data.c_str(), 1);
  const auto env = run("report --table types --format csv", desk.tmp.path());
  unsetenv("CATALOGUE_DATA_DIR");
  CHECK(env.code == 0);
  CHECK(env.out == store::read_file(golden("types.csv")));
}

TEST_CASE("openapi subcommand prints the description") {
  TempDir tmp;
  const auto r = run("openapi", tmp.path());
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["openapi"] == "3.0.3");
}
