#include "catalogue/review.hpp"

#include <algorithm>

#include "text_util.hpp"

namespace catalogue::review {

bool Session::completable() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
}

Json session_to_json(const Session& s) {
  Json checks = Json::object();
  for (const auto& [k, v] : s.checks) checks[k] = v;
  return {{"session_id", s.id},
          {"uid", s.uid},
          {"base_version", s.base_version},
          {"validator", person_to_json(s.validator)},
          {"self_validation", s.self_validation},
          {"entry", entry_to_json(s.entry)},
          {"section_checks", std::move(checks)},
          {"edited_sections", s.edited},
          {"finalized", s.finalized},
          {"completable", s.completable()}};
}

Json status_to_json(const Status& s) {
  Json records = Json::array();
  for (const auto& r : s.records) records.push_back(store::record_to_json(r));
  return {{"uid", s.uid},
          {"latest_version", s.latest_version},
          {"validated", s.validated},
          {"latest_validated", s.latest_validated},
          {"records", std::move(records)}};
}

Session begin_validation(const store::Store& store, std::string_view uid, const Person& validator,
                         const Policy& policy) {
  const auto snap = store.snapshot();
  const store::UidState* st = snap->find(uid);
  if (st == nullptr) {
    throw Error(ErrorKind::not_found, "no entry with uid '" + std::string(uid) + "'", "uid");
  }
  Session s;
  s.uid = std::string(uid);
  s.base_version = st->latest_version().version_no;
  s.validator = validator;
  s.entry = st->latest;
  s.self_validation = util::iequals(validator.email, st->latest.provenance.submitter.email) ||
                      util::iequals(validator.email, st->latest_version().author.email);
  if (s.self_validation && policy.forbid_self_validation) {
    throw Error(ErrorKind::self_validation,
                "validator '" + validator.email + "' submitted this entry", "validator");
  }
  for (Section sec : applicable_sections(s.entry.rtype)) s.checks[std::string(section_name(sec))] = false;
  return s;
}

Session check_section(const store::Store& store, Session session, Section section,
                      const std::optional<Json>& edit) {
  if (!is_applicable(session.entry.rtype, section)) {
    throw Error(ErrorKind::section_not_applicable,
                "section '" + std::string(section_name(section)) + "' does not apply to " +
                    std::string(vocab_id(session.entry.rtype)),
                std::string(section_name(section)));
  }
  const std::string name(section_name(section));
  if (edit) {
    CatalogueEntry edited;
    try {
      edited = apply_section_edit(session.entry, section, *edit);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::parse_error) throw;
      ValidationReport report;
      report.violations.push_back({"parse-error", e.field_path(), e.what(), Severity::error});
      throw Error(std::move(report), "edit does not parse");
    }
    CatalogueIndex idx = store.snapshot()->index();
    idx[edited.uid()] = edited.rtype;
    ValidationReport report = validate_entry(edited, idx);
    if (!report.accepted()) throw Error(std::move(report), "edited entry failed validation");
    if (section_to_json(edited, section) != section_to_json(session.entry, section)) {
      session.edited.insert(name);
    }
    session.entry = std::move(edited);
  }
  session.checks[name] = true;
  return session;
}

store::ValidationRecord finalize_validation(store::Store& store, const Session& session) {
  if (session.finalized) {
    throw Error(ErrorKind::conflicting_finalize, "session already finalized", "session_id");
  }
  store::ValidationRecord rec;
  rec.uid = session.uid;
  rec.base_version = session.base_version;
  rec.validator = session.validator;
  rec.section_checks = session.checks;
  rec.edited_sections = session.edited;
  rec.complete = session.completable();
  rec.self_validation = session.self_validation;
  std::optional<CatalogueEntry> edited;
  if (!session.edited.empty()) edited = session.entry;
  return store.append_validation(std::move(rec), edited);
}

Status status(const store::Store& store, std::string_view uid) {
  const auto snap = store.snapshot();
  const store::UidState* st = snap->find(uid);
  if (st == nullptr) {
    throw Error(ErrorKind::not_found, "no entry with uid '" + std::string(uid) + "'", "uid");
  }
  Status s;
  s.uid = std::string(uid);
  s.latest_version = st->latest_version().version_no;
  s.validated = st->validated();
  s.latest_validated = st->latest_validated();
  s.records = st->validations;
  return s;
}

// Desk

Session& Desk::find_locked(std::string_view id) {
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorKind::not_found, "no review session '" + std::string(id) + "'", "session_id");
  }
  return it->second;
}

Session Desk::begin(std::string_view uid, const Person& validator) {
  Session s = begin_validation(store_, uid, validator, policy_);
  std::lock_guard lock(mu_);
  s.id = "s" + std::to_string(next_id_++);
  sessions_.emplace(s.id, s);
  return s;
}

Session Desk::check(std::string_view session_id, Section section, const std::optional<Json>& edit) {
  std::lock_guard lock(mu_);
  Session& s = find_locked(session_id);
  if (s.finalized) {
    throw Error(ErrorKind::conflicting_finalize, "session already finalized", "session_id");
  }
  s = check_section(store_, s, section, edit);
  return s;
}

store::ValidationRecord Desk::finalize(std::string_view session_id) {
  std::lock_guard lock(mu_);
  Session& s = find_locked(session_id);
  auto rec = finalize_validation(store_, s);
  s.finalized = true;
  return rec;
}

Session Desk::get(std::string_view session_id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorKind::not_found, "no review session '" + std::string(session_id) + "'",
                "session_id");
  }
  return it->second;
}

}  // namespace catalogue::review
