#pragma once

// Append-only, versioned persistence for catalogue entries.
//
// Layout under the data directory:
//   entries/<uid>/v<n>.json          canonical JSON of version n
//   entries/<uid>/index.json         version metadata (number, time, author)
//   entries/<uid>/validations/r<n>.json
//
// Every file is written to a temporary name, fsynced and renamed, and the
// index is rewritten last, so a crash mid-save leaves the previous state.

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "catalogue/entry_json.hpp"
#include "catalogue/schema.hpp"
#include "catalogue/validate.hpp"

namespace catalogue::store {

using TimePoint = std::chrono::system_clock::time_point;
using Clock = std::function<TimePoint()>;

/// "YYYY-MM-DDTHH:MM:SS.mmmZ"; lexicographic order equals time order.
std::string format_timestamp(TimePoint t);
std::optional<TimePoint> parse_timestamp(std::string_view s);

struct EntryVersion {
  std::string uid;
  int version_no = 0;
  std::string saved_at;
  Person author;
  std::string payload;

  friend bool operator==(const EntryVersion&, const EntryVersion&) = default;
};

struct ValidationRecord {
  std::string uid;
  int record_no = 0;
  int base_version = 0;
  Person validator;
  std::map<std::string, bool> section_checks;
  std::set<std::string> edited_sections;
  std::string saved_at;
  bool complete = false;
  bool self_validation = false;
  /// Version created from the validator's edits, if any.
  std::optional<int> result_version;

  friend bool operator==(const ValidationRecord&, const ValidationRecord&) = default;
};

Json record_to_json(const ValidationRecord& r);
ValidationRecord record_from_json(const Json& j);

struct UidState {
  std::vector<EntryVersion> versions;
  CatalogueEntry latest;
  std::vector<ValidationRecord> validations;

  const EntryVersion& latest_version() const { return versions.back(); }
  bool validated() const;
  bool latest_validated() const;
};

/// Immutable view of the store at one instant.
class Snapshot {
 public:
  using Map = std::map<std::string, std::shared_ptr<const UidState>, std::less<>>;

  Snapshot() = default;
  explicit Snapshot(Map m) : states_(std::move(m)) {}

  const Map& states() const { return states_; }
  const UidState* find(std::string_view uid) const;
  std::size_t size() const { return states_.size(); }

  /// Latest entries in uid order.
  std::vector<CatalogueEntry> entries() const;
  CatalogueIndex index() const;
  const CatalogueEntry* entry(std::string_view uid) const;

 private:
  Map states_;
};

/// Conjunction of optional clauses; an empty filter matches everything.
struct Filter {
  std::optional<ResourceType> rtype;
  std::optional<TargetGroup> group;
  std::optional<geo::Macroarea> macroarea;
  std::optional<LicenseProperty> license_property;
  std::optional<MediaType> media;
  std::optional<CustodianType> custodian_type;
  std::optional<PiiContains> pii_contains;
  std::optional<std::string> text;
};

bool matches(const Filter& f, const CatalogueEntry& e, const Snapshot& snap);

/// The custodian type of an entry, following a link to an organization
/// entry when the custodian names none itself.
std::optional<CustodianType> effective_custodian_type(
    const CatalogueEntry& e, const std::function<const CatalogueEntry*(std::string_view)>& lookup);

struct SaveResult {
  std::string uid;
  int version_no = 0;
  /// Warnings reported by validation; errors never reach a save.
  ValidationReport report;
};

struct ImportError {
  /// 1-based position of the item (array element or CSV line).
  std::size_t row = 0;
  std::string rule;
  std::string field_path;
  std::string detail;
};

struct ImportResult {
  std::vector<SaveResult> saved;
  std::vector<ImportError> errors;
};

class Store {
 public:
  explicit Store(std::filesystem::path data_dir, Clock clock = {});

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const std::filesystem::path& data_dir() const { return dir_; }

  SaveResult save_entry(const CatalogueEntry& entry, const Person& author);

  std::vector<EntryVersion> list_versions(std::string_view uid) const;
  EntryVersion version(std::string_view uid, int version_no) const;

  std::shared_ptr<const Snapshot> snapshot() const;

  std::vector<std::string> search(const Filter& f) const;

  /// JSON array of the latest canonical payloads in uid order.
  std::string export_catalogue() const;

  /// Accepts a JSON array of entries (the export format). Cross-references
  /// may point at other entries of the same batch.
  ImportResult import_json(std::string_view bytes, const Person& author);

  /// Throws malformed-csv when the header does not match.
  ImportResult import_csv(std::string_view text, const Person& author);

  /// Validator edits and the record are stored under the uid's write lock;
  /// `edited` (when set) becomes a new version attributed to the validator.
  ValidationRecord append_validation(ValidationRecord record,
                                     const std::optional<CatalogueEntry>& edited);

  std::vector<ValidationRecord> validation_records(std::string_view uid) const;

 private:
  struct Prepared {
    std::size_t row;
    CatalogueEntry entry;
  };

  ImportResult import_batch(std::vector<Prepared> batch, std::vector<ImportError> errors,
                            const Person& author);
  SaveResult save_validated(const CatalogueEntry& entry, const Person& author,
                            ValidationReport report);
  SaveResult save_locked(const CatalogueEntry& entry, const Person& author,
                         ValidationReport report);
  void publish(const std::string& uid, std::shared_ptr<const UidState> state);
  std::mutex& uid_mutex(const std::string& uid);
  TimePoint now() const;
  void load();

  std::filesystem::path dir_;
  Clock clock_;

  mutable std::shared_mutex snap_mu_;
  std::shared_ptr<const Snapshot> snap_;

  std::mutex locks_mu_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

/// Writes `bytes` to `path` through a temporary file, fsync and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace catalogue::store
