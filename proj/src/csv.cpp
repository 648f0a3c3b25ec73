#include "txpolicy/csv.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "txpolicy/errors.hpp"

namespace txpolicy {

namespace {

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string render_csv(const Table& table) {
  if (table.rows.empty()) throw ValidationError("csv: no rows to emit");
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void write_csv(const Table& table, const std::string& path) {
  write_text(render_csv(table), path);
}

std::string render_summary_json(const std::vector<Summary>& summary) {
  if (summary.empty()) throw ValidationError("json: no rows to emit");
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : summary) {
    arr.push_back({{"policy", s.policy},
                   {"N0", s.initial_battery},
                   {"mean_utility", s.mean_utility},
                   {"ci95_utility", s.ci95_utility},
                   {"mean_lifetime", s.mean_lifetime},
                   {"ci95_lifetime", s.ci95_lifetime}});
  }
  return arr.dump(2) + "\n";
}

void write_summary_json(const std::vector<Summary>& summary, const std::string& path) {
  write_text(render_summary_json(summary), path);
}

}  // namespace txpolicy
