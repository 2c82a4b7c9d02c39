#include "catalogue/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "catalogue/csv.hpp"
#include "text_util.hpp"

namespace catalogue::store {
namespace fs = std::filesystem;

namespace {

[[noreturn]] void io_fail(const std::string& what, const fs::path& p, int err) {
  throw Error(ErrorKind::storage_io, what + " " + p.string() + ": " + std::strerror(err));
}

void fsync_path(const fs::path& p, int flags) {
  const int fd = ::open(p.c_str(), flags);
  if (fd < 0) io_fail("cannot open", p, errno);
  if (::fsync(fd) != 0) {
    const int err = errno;
    ::close(fd);
    io_fail("cannot fsync", p, err);
  }
  ::close(fd);
}

[[noreturn]] void not_found(std::string_view uid) {
  throw Error(ErrorKind::not_found, "no entry with uid '" + std::string(uid) + "'", "uid");
}

fs::path uid_dir(const fs::path& root, std::string_view uid) {
  return root / "entries" / std::string(uid);
}

fs::path version_path(const fs::path& root, std::string_view uid, int n) {
  return uid_dir(root, uid) / ("v" + std::to_string(n) + ".json");
}

fs::path record_path(const fs::path& root, std::string_view uid, int n) {
  return uid_dir(root, uid) / "validations" / ("r" + std::to_string(n) + ".json");
}

Json index_to_json(const std::string& uid, const std::vector<EntryVersion>& versions) {
  Json arr = Json::array();
  for (const auto& v : versions) {
    arr.push_back(
        {{"version_no", v.version_no}, {"saved_at", v.saved_at}, {"author", person_to_json(v.author)}});
  }
  return {{"uid", uid}, {"versions", std::move(arr)}};
}

std::string later_of(std::string stamp, const std::string& floor) {
  return stamp < floor ? floor : stamp;
}

}  // namespace

// timestamps

std::string format_timestamp(TimePoint t) {
  using namespace std::chrono;
  const auto ms = duration_cast<milliseconds>(t.time_since_epoch()).count();
  std::time_t secs = static_cast<std::time_t>(ms / 1000);
  long frac = static_cast<long>(ms % 1000);
  if (frac < 0) {
    frac += 1000;
    --secs;
  }
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03ldZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, frac);
  return buf;
}

std::optional<TimePoint> parse_timestamp(std::string_view s) {
  int y, mo, d, h, mi, sec, ms = 0;
  char tail = 0;
  const std::string str(s);
  const int n = std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3d%c", &y, &mo, &d, &h, &mi,
                            &sec, &ms, &tail);
  if (n != 8 || tail != 'Z' || str.size() != 24) return std::nullopt;
  std::tm tm{};
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = sec;
  const std::time_t secs = timegm(&tm);
  return TimePoint(std::chrono::seconds(secs)) + std::chrono::milliseconds(ms);
}

// files

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  const fs::path tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_fail("cannot create", tmp, errno);
  std::size_t off = 0;
  while (off < bytes.size()) {
    const ssize_t w = ::write(fd, bytes.data() + off, bytes.size() - off);
    if (w < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd);
      io_fail("cannot write", tmp, err);
    }
    off += static_cast<std::size_t>(w);
  }
  if (::fsync(fd) != 0) {
    const int err = errno;
    ::close(fd);
    io_fail("cannot fsync", tmp, err);
  }
  ::close(fd);
  if (::rename(tmp.c_str(), path.c_str()) != 0) io_fail("cannot rename to", path, errno);
  fsync_path(path.parent_path(), O_RDONLY | O_DIRECTORY);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail("cannot read", path, errno);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// validation records

Json record_to_json(const ValidationRecord& r) {
  Json checks = Json::object();
  for (const auto& [section, ok] : r.section_checks) checks[section] = ok;
  Json j{{"uid", r.uid},
         {"record_no", r.record_no},
         {"base_version", r.base_version},
         {"validator", person_to_json(r.validator)},
         {"section_checks", std::move(checks)},
         {"edited_sections", r.edited_sections},
         {"saved_at", r.saved_at},
         {"complete", r.complete},
         {"self_validation", r.self_validation}};
  if (r.result_version) j["result_version"] = *r.result_version;
  return j;
}

ValidationRecord record_from_json(const Json& j) {
  try {
    ValidationRecord r;
    r.uid = j.at("uid").get<std::string>();
    r.record_no = j.at("record_no").get<int>();
    r.base_version = j.at("base_version").get<int>();
    r.validator = person_from_json(j.at("validator"), "validator");
    for (const auto& [k, v] : j.at("section_checks").items()) r.section_checks[k] = v.get<bool>();
    r.edited_sections = j.at("edited_sections").get<std::set<std::string>>();
    r.saved_at = j.at("saved_at").get<std::string>();
    r.complete = j.at("complete").get<bool>();
    r.self_validation = j.value("self_validation", false);
    if (j.contains("result_version")) r.result_version = j.at("result_version").get<int>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse_error, std::string("validation record: ") + e.what());
  }
}

// snapshot

bool UidState::validated() const {
  return std::any_of(validations.begin(), validations.end(),
                     [](const ValidationRecord& r) { return r.complete; });
}

bool UidState::latest_validated() const {
  const int latest_no = versions.back().version_no;
  return std::any_of(validations.begin(), validations.end(), [&](const ValidationRecord& r) {
    return r.complete && (r.result_version ? *r.result_version : r.base_version) == latest_no;
  });
}

const UidState* Snapshot::find(std::string_view uid) const {
  const auto it = states_.find(uid);
  return it == states_.end() ? nullptr : it->second.get();
}

std::vector<CatalogueEntry> Snapshot::entries() const {
  std::vector<CatalogueEntry> out;
  out.reserve(states_.size());
  for (const auto& [uid, st] : states_) out.push_back(st->latest);
  return out;
}

CatalogueIndex Snapshot::index() const {
  CatalogueIndex idx;
  for (const auto& [uid, st] : states_) idx.emplace(uid, st->latest.rtype);
  return idx;
}

const CatalogueEntry* Snapshot::entry(std::string_view uid) const {
  const UidState* st = find(uid);
  return st ? &st->latest : nullptr;
}

// search

std::optional<CustodianType> effective_custodian_type(
    const CatalogueEntry& e, const std::function<const CatalogueEntry*(std::string_view)>& lookup) {
  if (!e.custodian) return std::nullopt;
  if (e.custodian->ctype) return e.custodian->ctype;
  if (!e.custodian->link_uid || !lookup) return std::nullopt;
  const CatalogueEntry* org = lookup(*e.custodian->link_uid);
  if (org == nullptr || org->rtype != ResourceType::organization || !org->custodian) {
    return std::nullopt;
  }
  return org->custodian->ctype;
}

bool matches(const Filter& f, const CatalogueEntry& e, const Snapshot& snap) {
  if (f.rtype && e.rtype != *f.rtype) return false;
  if (f.group && !entry_groups(e).contains(*f.group)) return false;
  if (f.macroarea && std::none_of(e.locations.begin(), e.locations.end(), [&](const GeoLocation& l) {
        return l.macroarea == f.macroarea;
      })) {
    return false;
  }
  if (f.license_property &&
      (!e.availability || !e.availability->license.properties.contains(*f.license_property))) {
    return false;
  }
  if (f.media && (!e.media || !e.media->media.contains(*f.media))) return false;
  if (f.custodian_type) {
    const auto ct =
        effective_custodian_type(e, [&](std::string_view uid) { return snap.entry(uid); });
    if (ct != f.custodian_type) return false;
  }
  if (f.pii_contains && (!e.availability || e.availability->pii.contains != f.pii_contains)) {
    return false;
  }
  if (f.text && !util::icontains(e.general.name, *f.text) &&
      !util::icontains(e.general.description, *f.text)) {
    return false;
  }
  return true;
}

// store

Store::Store(fs::path data_dir, Clock clock)
    : dir_(std::move(data_dir)),
      clock_(clock ? std::move(clock) : Clock([] { return std::chrono::system_clock::now(); })),
      snap_(std::make_shared<const Snapshot>()) {
  std::error_code ec;
  fs::create_directories(dir_ / "entries", ec);
  if (ec) throw Error(ErrorKind::storage_io, "cannot create " + (dir_ / "entries").string() + ": " + ec.message());
  load();
}

TimePoint Store::now() const { return clock_(); }

void Store::load() {
  Snapshot::Map states;
  std::error_code ec;
  for (const auto& dirent : fs::directory_iterator(dir_ / "entries", ec)) {
    if (!dirent.is_directory()) continue;
    const fs::path index_file = dirent.path() / "index.json";
    if (!fs::exists(index_file)) continue;
    auto state = std::make_shared<UidState>();
    Json index;
    try {
      index = Json::parse(read_file(index_file));
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::storage_io, index_file.string() + ": " + e.what());
    }
    const std::string uid = index.at("uid").get<std::string>();
    for (const auto& v : index.at("versions")) {
      EntryVersion ev;
      ev.uid = uid;
      ev.version_no = v.at("version_no").get<int>();
      ev.saved_at = v.at("saved_at").get<std::string>();
      ev.author = person_from_json(v.at("author"), "author");
      ev.payload = read_file(version_path(dir_, uid, ev.version_no));
      state->versions.push_back(std::move(ev));
    }
    if (state->versions.empty()) continue;
    state->latest = entry_from_json(state->versions.back().payload);
    const fs::path vdir = dirent.path() / "validations";
    if (fs::is_directory(vdir)) {
      for (const auto& rf : fs::directory_iterator(vdir)) {
        if (rf.path().extension() != ".json") continue;
        state->validations.push_back(record_from_json(Json::parse(read_file(rf.path()))));
      }
      std::sort(state->validations.begin(), state->validations.end(),
                [](const auto& a, const auto& b) { return a.record_no < b.record_no; });
    }
    states.emplace(uid, std::move(state));
  }
  if (ec) throw Error(ErrorKind::storage_io, "cannot list " + dir_.string() + ": " + ec.message());
  std::unique_lock lock(snap_mu_);
  snap_ = std::make_shared<const Snapshot>(std::move(states));
}

std::shared_ptr<const Snapshot> Store::snapshot() const {
  std::shared_lock lock(snap_mu_);
  return snap_;
}

std::mutex& Store::uid_mutex(const std::string& uid) {
  std::lock_guard lock(locks_mu_);
  auto& m = locks_[uid];
  if (!m) m = std::make_unique<std::mutex>();
  return *m;
}

void Store::publish(const std::string& uid, std::shared_ptr<const UidState> state) {
  std::unique_lock lock(snap_mu_);
  Snapshot::Map next = snap_->states();
  next[uid] = std::move(state);
  snap_ = std::make_shared<const Snapshot>(std::move(next));
}

SaveResult Store::save_entry(const CatalogueEntry& entry, const Person& author) {
  CatalogueIndex idx = snapshot()->index();
  idx[entry.uid()] = entry.rtype;
  ValidationReport report = validate_entry(entry, idx);
  if (!report.accepted()) {
    throw Error(std::move(report), "entry '" + entry.uid() + "' failed validation");
  }
  return save_validated(entry, author, std::move(report));
}

SaveResult Store::save_validated(const CatalogueEntry& entry, const Person& author,
                                 ValidationReport report) {
  std::lock_guard lock(uid_mutex(entry.uid()));
  return save_locked(entry, author, std::move(report));
}

SaveResult Store::save_locked(const CatalogueEntry& entry, const Person& author,
                              ValidationReport report) {
  const std::string& uid = entry.uid();
  const auto snap = snapshot();
  const UidState* prev = snap->find(uid);

  auto state = prev ? std::make_shared<UidState>(*prev) : std::make_shared<UidState>();
  EntryVersion ev;
  ev.uid = uid;
  ev.version_no = static_cast<int>(state->versions.size()) + 1;
  ev.saved_at = format_timestamp(now());
  if (!state->versions.empty()) ev.saved_at = later_of(ev.saved_at, state->versions.back().saved_at);
  ev.author = author;
  ev.payload = entry_to_canonical_json(entry);

  std::error_code ec;
  fs::create_directories(uid_dir(dir_, uid), ec);
  if (ec) throw Error(ErrorKind::storage_io, "cannot create directory for '" + uid + "': " + ec.message());
  write_file_atomic(version_path(dir_, uid, ev.version_no), ev.payload);
  state->versions.push_back(ev);
  write_file_atomic(uid_dir(dir_, uid) / "index.json",
                    canonical_dump(index_to_json(uid, state->versions)));
  state->latest = entry;
  publish(uid, std::move(state));
  return {uid, ev.version_no, std::move(report)};
}

std::vector<EntryVersion> Store::list_versions(std::string_view uid) const {
  const auto snap = snapshot();
  const UidState* st = snap->find(uid);
  if (st == nullptr) not_found(uid);
  return st->versions;
}

EntryVersion Store::version(std::string_view uid, int version_no) const {
  const auto snap = snapshot();
  const UidState* st = snap->find(uid);
  if (st == nullptr) not_found(uid);
  if (version_no < 1 || version_no > static_cast<int>(st->versions.size())) {
    throw Error(ErrorKind::not_found,
                "entry '" + std::string(uid) + "' has no version " + std::to_string(version_no),
                "version");
  }
  return st->versions[static_cast<std::size_t>(version_no - 1)];
}

std::vector<std::string> Store::search(const Filter& f) const {
  const auto snap = snapshot();
  std::vector<std::string> out;
  for (const auto& [uid, st] : snap->states()) {
    if (matches(f, st->latest, *snap)) out.push_back(uid);
  }
  return out;
}

std::string Store::export_catalogue() const {
  const auto snap = snapshot();
  std::string out = "[";
  bool first = true;
  for (const auto& [uid, st] : snap->states()) {
    if (!first) out += ',';
    first = false;
    out += st->latest_version().payload;
  }
  out += ']';
  return out;
}

ImportResult Store::import_batch(std::vector<Prepared> batch, std::vector<ImportError> errors,
                                 const Person& author) {
  CatalogueIndex idx = snapshot()->index();
  for (const auto& p : batch) idx[p.entry.uid()] = p.entry.rtype;

  ImportResult result;
  for (auto& p : batch) {
    ValidationReport report = validate_entry(p.entry, idx);
    if (!report.accepted()) {
      for (const auto& v : report.violations) {
        if (v.severity == Severity::error) errors.push_back({p.row, v.rule, v.field_path, v.detail});
      }
      continue;
    }
    result.saved.push_back(save_validated(p.entry, author, std::move(report)));
  }
  std::stable_sort(errors.begin(), errors.end(),
                   [](const ImportError& a, const ImportError& b) { return a.row < b.row; });
  result.errors = std::move(errors);
  return result;
}

ImportResult Store::import_json(std::string_view bytes, const Person& author) {
  Json arr;
  try {
    arr = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::parse_error, std::string("invalid JSON: ") + e.what(), "$");
  }
  if (!arr.is_array()) throw Error(ErrorKind::parse_error, "expected a JSON array of entries", "$");
  std::vector<Prepared> batch;
  std::vector<ImportError> errors;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    try {
      batch.push_back({i + 1, entry_from_json_value(arr[i])});
    } catch (const Error& e) {
      errors.push_back({i + 1, std::string(to_string(e.kind())), e.field_path(), e.what()});
    }
  }
  return import_batch(std::move(batch), std::move(errors), author);
}

ImportResult Store::import_csv(std::string_view text, const Person& author) {
  std::vector<Prepared> batch;
  std::vector<ImportError> errors;
  for (auto& row : csv::entries_from_csv(text)) {
    if (row.entry) {
      batch.push_back({row.line, std::move(*row.entry)});
    } else {
      errors.push_back({row.line, std::string(to_string(ErrorKind::parse_error)),
                        row.error->field_path, row.error->detail});
    }
  }
  return import_batch(std::move(batch), std::move(errors), author);
}

ValidationRecord Store::append_validation(ValidationRecord record,
                                          const std::optional<CatalogueEntry>& edited) {
  std::lock_guard lock(uid_mutex(record.uid));
  if (snapshot()->find(record.uid) == nullptr) not_found(record.uid);

  if (edited) {
    if (edited->uid() != record.uid) {
      throw Error(ErrorKind::parse_error, "edits may not change the uid", "general.uid");
    }
    CatalogueIndex idx = snapshot()->index();
    idx[edited->uid()] = edited->rtype;
    ValidationReport report = validate_entry(*edited, idx);
    if (!report.accepted()) throw Error(std::move(report), "edited entry failed validation");
    record.result_version = save_locked(*edited, record.validator, std::move(report)).version_no;
  }

  const auto snap = snapshot();
  const UidState* prev = snap->find(record.uid);
  auto state = std::make_shared<UidState>(*prev);
  record.record_no = static_cast<int>(state->validations.size()) + 1;
  record.saved_at = format_timestamp(now());
  if (!state->validations.empty()) {
    record.saved_at = later_of(record.saved_at, state->validations.back().saved_at);
  }
  std::error_code ec;
  fs::create_directories(record_path(dir_, record.uid, 1).parent_path(), ec);
  if (ec) throw Error(ErrorKind::storage_io, "cannot create validations directory: " + ec.message());
  write_file_atomic(record_path(dir_, record.uid, record.record_no),
                    canonical_dump(record_to_json(record)));
  state->validations.push_back(record);
  publish(record.uid, std::move(state));
  return record;
}

std::vector<ValidationRecord> Store::validation_records(std::string_view uid) const {
  const auto snap = snapshot();
  const UidState* st = snap->find(uid);
  if (st == nullptr) not_found(uid);
  return st->validations;
}

}  // namespace catalogue::store
