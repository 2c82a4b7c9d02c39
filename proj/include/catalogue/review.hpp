#pragma once

// Second-participant review: a validator walks the applicable sections of an
// entry, optionally edits them, ticks each one, and saves a validation
// record. Edits become a new entry version attributed to the validator.

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "catalogue/store.hpp"

namespace catalogue::review {

struct Session {
  std::string id;
  std::string uid;
  int base_version = 0;
  Person validator;
  bool self_validation = false;
  /// Working copy, starting from the base version's answers.
  CatalogueEntry entry;
  std::map<std::string, bool> checks;
  std::set<std::string> edited;
  bool finalized = false;

  bool completable() const;
};

struct Policy {
  /// Reject sessions where the validator is the base version's submitter.
  bool forbid_self_validation = false;
};

struct Status {
  std::string uid;
  int latest_version = 0;
  /// At least one complete record exists.
  bool validated = false;
  /// A complete record covers the latest version.
  bool latest_validated = false;
  std::vector<store::ValidationRecord> records;
};

Json session_to_json(const Session& s);
Json status_to_json(const Status& s);

/// Session over the latest version, all sections unchecked.
Session begin_validation(const store::Store& store, std::string_view uid, const Person& validator,
                         const Policy& policy = {});

/// Applies `edit` (if any) to the working copy, re-validates it, then marks
/// the section checked. On failure the session is left unchanged.
Session check_section(const store::Store& store, Session session, Section section,
                      const std::optional<Json>& edit);

store::ValidationRecord finalize_validation(store::Store& store, const Session& session);

Status status(const store::Store& store, std::string_view uid);

/// Open sessions by id, for callers that hold sessions across requests.
class Desk {
 public:
  explicit Desk(store::Store& store, Policy policy = {}) : store_(store), policy_(policy) {}

  Session begin(std::string_view uid, const Person& validator);
  Session check(std::string_view session_id, Section section, const std::optional<Json>& edit);
  /// Throws conflicting-finalize when the session was already finalized.
  store::ValidationRecord finalize(std::string_view session_id);
  Session get(std::string_view session_id) const;

 private:
  Session& find_locked(std::string_view id);

  store::Store& store_;
  Policy policy_;
  mutable std::mutex mu_;
  std::map<std::string, Session, std::less<>> sessions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace catalogue::review
