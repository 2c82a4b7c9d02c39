#include <algorithm>

#include "catalogue/analytics.hpp"
#include "catalogue/csv.hpp"

namespace catalogue::analytics {
namespace {

std::string_view style_id(PercentStyle s) {
  switch (s) {
    case PercentStyle::integer: return "integer";
    case PercentStyle::two_decimals: return "two_decimals";
    case PercentStyle::none: return "none";
  }
  return "none";
}

std::string csv_line(std::vector<std::string> fields) { return csv::format_row(fields); }

/// Renders rows as a pipe table; `right` marks right-aligned columns.
std::string pipe_table(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows,
                       const std::vector<bool>& right) {
  std::vector<std::size_t> width(header.size(), 3);
  auto widen = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  };
  widen(header);
  for (const auto& r : rows) widen(r);

  auto cell = [&](const std::string& s, std::size_t i) {
    const std::string pad(width[i] - s.size(), ' ');
    return right[i] ? pad + s : s + pad;
  };
  std::string out = "|";
  for (std::size_t i = 0; i < header.size(); ++i) out += " " + cell(header[i], i) + " |";
  out += "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += right[i] ? " " + std::string(width[i] - 1, '-') + ":" : " " + std::string(width[i], '-');
    out += " |";
  }
  out += "\n";
  for (const auto& r : rows) {
    out += "|";
    for (std::size_t i = 0; i < r.size(); ++i) out += " " + cell(r[i], i) + " |";
    out += "\n";
  }
  return out;
}

bool has_percent(const Distribution& d) { return d.style != PercentStyle::none; }

}  // namespace

std::string to_csv(const Distribution& d) {
  std::vector<std::string> header = {"id", "label", "count"};
  if (has_percent(d)) header.emplace_back("percent");
  std::string out = csv::format_row(header);
  auto emit = [&](const std::string& id, const std::string& label, std::uint64_t count) {
    std::vector<std::string> f = {id, label, std::to_string(count)};
    if (has_percent(d)) f.push_back(format_percent(count, d.denominator, d.style));
    out += csv_line(std::move(f));
  };
  for (const auto& r : d.rows) emit(r.id, r.label, r.count);
  if (d.missing && !d.empty()) emit("missing", "Missing", *d.missing);
  return out;
}

std::string to_markdown(const Distribution& d) {
  std::vector<std::string> header = {"Label", "#"};
  std::vector<bool> right = {false, true};
  if (has_percent(d)) {
    header.emplace_back("Percentage");
    right.push_back(true);
  }
  std::vector<std::vector<std::string>> rows;
  auto add = [&](const std::string& label, std::uint64_t count) {
    std::vector<std::string> r = {label, std::to_string(count)};
    if (has_percent(d)) r.push_back(format_percent(count, d.denominator, d.style));
    rows.push_back(std::move(r));
  };
  for (const auto& r : d.rows) add(r.label, r.count);
  if (d.missing && !d.empty()) add("Missing", *d.missing);
  std::string out = pipe_table(header, rows, right);
  out += "\nDenominator: " + std::to_string(d.denominator) + " " +
         std::string(to_string(d.denominator_kind)) + "\n";
  return out;
}

Json to_json(const Distribution& d) {
  Json rows = Json::array();
  for (const auto& r : d.rows) {
    Json row{{"id", r.id}, {"label", r.label}, {"count", r.count}};
    if (has_percent(d)) row["percent"] = format_percent(r.count, d.denominator, d.style);
    rows.push_back(std::move(row));
  }
  Json j{{"table", d.table},
         {"rows", std::move(rows)},
         {"denominator", d.denominator},
         {"denominator_kind", std::string(to_string(d.denominator_kind))},
         {"percent_style", std::string(style_id(d.style))}};
  if (d.missing) j["missing"] = *d.missing;
  return j;
}

std::string to_csv(const CrossTab& t) {
  std::vector<std::string> header = {"id", "label"};
  for (const auto& c : t.column_keys) header.push_back(c.id);
  std::string out = csv::format_row(header);
  for (std::size_t r = 0; r < t.row_keys.size(); ++r) {
    std::vector<std::string> f = {t.row_keys[r].id, t.row_keys[r].label};
    for (auto v : t.counts[r]) f.push_back(std::to_string(v));
    out += csv_line(std::move(f));
  }
  return out;
}

std::string to_markdown(const CrossTab& t) {
  std::vector<std::string> header = {"Languages"};
  std::vector<bool> right = {false};
  for (const auto& c : t.column_keys) {
    header.push_back(c.label);
    right.push_back(true);
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < t.row_keys.size(); ++r) {
    std::vector<std::string> cells = {t.row_keys[r].label};
    for (auto v : t.counts[r]) cells.push_back(std::to_string(v));
    rows.push_back(std::move(cells));
  }
  return pipe_table(header, rows, right);
}

Json to_json(const CrossTab& t) {
  Json cols = Json::array();
  for (const auto& c : t.column_keys) cols.push_back({{"id", c.id}, {"label", c.label}, {"total", c.count}});
  Json rows = Json::array();
  for (std::size_t r = 0; r < t.row_keys.size(); ++r) {
    rows.push_back({{"id", t.row_keys[r].id}, {"label", t.row_keys[r].label}, {"counts", t.counts[r]}});
  }
  return {{"table", t.table}, {"columns", std::move(cols)}, {"rows", std::move(rows)}};
}

std::string to_csv(const TagList& t) {
  std::string out = "tag\n";
  for (const auto& tag : t.tags) out += csv_line({tag});
  return out;
}

std::string to_markdown(const TagList& t) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& tag : t.tags) rows.push_back({tag});
  return pipe_table({"Tag"}, rows, {false}) + "\nCount: " + std::to_string(t.count()) + "\n";
}

Json to_json(const TagList& t) { return {{"table", "singletons"}, {"count", t.count()}, {"tags", t.tags}}; }

}  // namespace catalogue::analytics
