#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <iostream>

#include "catalogue/analytics.hpp"
#include "catalogue/langtag.hpp"
#include "catalogue/service.hpp"
#include "catalogue/store.hpp"
#include "catalogue/validate.hpp"

namespace fs = std::filesystem;
using namespace catalogue;

namespace {

enum Exit : int { ok = 0, invalid = 1, io = 2, usage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::storage_io:
    case ErrorKind::not_found:
      return io;
    default:
      return invalid;
  }
}

void print_report(const std::string& label, const ValidationReport& report) {
  for (const auto& v : report.violations) {
    std::cerr << label << ": " << (v.severity == Severity::error ? "error" : "warning") << " ["
              << v.rule << "] " << v.field_path << ": " << v.detail << "\n";
  }
}

fs::path default_data_dir() {
  if (const char* env = std::getenv("CATALOGUE_DATA_DIR"); env && *env) return env;
  return "catalogue-data";
}

std::string read_input(const fs::path& p) {
  if (p == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return store::read_file(p);
}

/// Entries of a JSON document holding one entry or an array of them.
std::vector<CatalogueEntry> parse_entries(const std::string& bytes) {
  Json doc;
  try {
    doc = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::parse_error, std::string("invalid JSON: ") + e.what(), "$");
  }
  std::vector<CatalogueEntry> out;
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      try {
        out.push_back(entry_from_json_value(doc[i]));
      } catch (const Error& e) {
        throw Error(ErrorKind::parse_error, e.what(),
                    "[" + std::to_string(i) + "]" + (e.field_path().empty() ? "" : "." + e.field_path()));
      }
    }
  } else {
    out.push_back(entry_from_json_value(doc));
  }
  return out;
}

const fs::path& existing_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorKind::storage_io, "data directory " + dir.string() + " does not exist");
  }
  return dir;
}

int cmd_validate(const fs::path& file, const std::optional<fs::path>& data_dir) {
  const auto entries = parse_entries(read_input(file));
  CatalogueIndex index;
  if (data_dir) index = store::Store(existing_dir(*data_dir)).snapshot()->index();
  for (const auto& e : entries) index[e.uid()] = e.rtype;
  const auto reports = validate_all(entries, index);
  bool accepted = true;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    print_report(entries[i].uid().empty() ? "[" + std::to_string(i) + "]" : entries[i].uid(), reports[i]);
    accepted = accepted && reports[i].accepted();
  }
  return accepted ? ok : invalid;
}

int cmd_import(const fs::path& file, const fs::path& data_dir, const Person& author,
               const std::string& format) {
  const std::string bytes = read_input(file);
  const bool csv = format == "csv" || (format == "auto" && file.extension() == ".csv");
  store::Store st(data_dir);
  const auto result = csv ? st.import_csv(bytes, author) : st.import_json(bytes, author);
  for (const auto& e : result.errors) {
    std::cerr << "row " << e.row << ": [" << e.rule << "] " << e.field_path << ": " << e.detail << "\n";
  }
  for (const auto& s : result.saved) {
    std::cout << s.uid << " v" << s.version_no << "\n";
    print_report(s.uid, s.report);
  }
  std::cerr << "imported " << result.saved.size() << ", rejected " << result.errors.size() << "\n";
  return result.errors.empty() ? ok : invalid;
}

int cmd_export(const fs::path& data_dir, const std::optional<fs::path>& output) {
  store::Store st(existing_dir(data_dir));
  const std::string bytes = st.export_catalogue();
  if (output) {
    store::write_file_atomic(*output, bytes);
  } else {
    std::cout << bytes;
  }
  return ok;
}

struct ReportArgs {
  std::string table;
  std::string format = "md";
  std::optional<fs::path> from;
  std::optional<std::string> group;
  std::size_t top = 10;
  bool exclude_target_groups = false;
};

std::string render(const analytics::Facts& f, const ReportArgs& a) {
  using namespace analytics;
  auto emit = [&](const auto& table) -> std::string {
    if (a.format == "csv") return to_csv(table);
    if (a.format == "json") return canonical_dump(to_json(table)) + "\n";
    return to_markdown(table);
  };
  const auto& t = a.table;
  if (t == "types") return emit(type_distribution(f));
  if (t == "languages") return emit(language_group_distribution(f));
  if (t == "locations" || t == "first-locations") return emit(first_location_distribution(f));
  if (t == "language-regions") {
    if (!a.group) throw UsageError("--table language-regions needs --group");
    const auto g = langtag::target_group_from_string(*a.group);
    if (!g) throw UsageError("unknown target group '" + *a.group + "'");
    return emit(language_by_region(f, *g));
  }
  if (t == "custodian-types") return emit(custodian_type_distribution(f));
  if (t == "custodian-locations") return emit(custodian_location_top(f, a.top));
  if (t == "licenses") return emit(license_property_distribution(f));
  if (t == "pii") return emit(pii_distribution(f));
  if (t == "singletons") return emit(singleton_languages(f, a.exclude_target_groups));
  if (t == "type-by-language-group") return emit(type_by_language_group(f));
  throw UsageError("unknown table '" + t + "'");
}

int cmd_report(const ReportArgs& a, const fs::path& data_dir) {
  analytics::Facts facts;
  if (a.from) {
    const auto entries = parse_entries(read_input(*a.from));
    facts = analytics::build_facts(entries);
  } else {
    store::Store st(existing_dir(data_dir));
    facts = analytics::build_facts(*st.snapshot());
  }
  std::cout << render(facts, a);
  return ok;
}

service::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

int cmd_serve(const std::optional<fs::path>& config) {
  service::Server server(service::load_config(config));
  const int port = server.bind();
  std::cerr << "listening on " << server.config().host << ":" << port << " (data "
            << server.config().data_dir.string() << ")\n";
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.run();
  g_server = nullptr;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Language resource catalogue tool"};
  app.require_subcommand(1);

  fs::path data_dir = default_data_dir();
  auto add_data_dir = [&](CLI::App* sub) {
    sub->add_option("--data-dir", data_dir, "Store directory (default ./catalogue-data or $CATALOGUE_DATA_DIR)");
  };

  auto* validate = app.add_subcommand("validate", "Validate an entry file (one entry or an array)");
  fs::path validate_file;
  std::optional<fs::path> validate_dir;
  validate->add_option("file", validate_file, "Entry JSON file, or - for stdin")->required();
  validate->add_option("--data-dir", validate_dir, "Resolve cross-references against this store");

  auto* import = app.add_subcommand("import", "Import a CSV or JSON file into the store");
  fs::path import_file;
  std::string import_format = "auto";
  Person author{"catalogue import", ""};
  import->add_option("file", import_file, "CSV or JSON (export format) file")->required();
  import->add_option("--format", import_format, "auto, csv or json")
      ->check(CLI::IsMember({"auto", "csv", "json"}));
  import->add_option("--author-name", author.name, "Recorded version author");
  import->add_option("--author-email", author.email, "Recorded version author email");
  add_data_dir(import);

  auto* exp = app.add_subcommand("export", "Write the latest version of every entry as a JSON array");
  std::optional<fs::path> export_out;
  exp->add_option("-o,--output", export_out, "Output file (default stdout)");
  add_data_dir(exp);

  auto* report = app.add_subcommand("report", "Print an analytics table");
  ReportArgs ra;
  report->add_option("--table", ra.table, "Table")
      ->required()
      ->check(CLI::IsMember({"types", "languages", "locations", "first-locations", "language-regions",
                             "custodian-types", "custodian-locations", "licenses", "pii", "singletons",
                             "type-by-language-group"}));
  report->add_option("--format", ra.format, "csv, md or json")->check(CLI::IsMember({"csv", "md", "json"}));
  report->add_option("--from", ra.from, "Read an export file instead of a data directory");
  report->add_option("--group", ra.group, "Target group for language-regions");
  report->add_option("--top", ra.top, "Rows for custodian-locations");
  report->add_flag("--exclude-target-groups", ra.exclude_target_groups,
                   "Singletons: drop tags that belong to a target group");
  add_data_dir(report);

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  std::optional<fs::path> config;
  serve->add_option("--config", config, "JSON config file");

  auto* openapi = app.add_subcommand("openapi", "Print the OpenAPI description");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*validate) return cmd_validate(validate_file, validate_dir);
    if (*import) return cmd_import(import_file, data_dir, author, import_format);
    if (*exp) return cmd_export(data_dir, export_out);
    if (*report) return cmd_report(ra, data_dir);
    if (*serve) return cmd_serve(config);
    if (*openapi) {
      std::cout << service::openapi().dump(2) << "\n";
      return ok;
    }
  } catch (const UsageError& e) {
    std::cerr << "catalogue: " << e.what() << "\n";
    return usage;
  } catch (const Error& e) {
    std::cerr << "catalogue: " << to_string(e.kind()) << ": " << e.what();
    if (!e.field_path().empty()) std::cerr << " (at " << e.field_path() << ")";
    std::cerr << "\n";
    if (e.report()) print_report("entry", *e.report());
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "catalogue: " << e.what() << "\n";
    return io;
  }
  return usage;
}
