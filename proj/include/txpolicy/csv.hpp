#pragma once

#include <string>
#include <vector>

#include "txpolicy/simulator.hpp"

namespace txpolicy {

// shortest decimal form at 9 significant digits
std::string format_double(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const Table& table);
void write_csv(const Table& table, const std::string& path);  // IoError on failure

std::string render_summary_json(const std::vector<Summary>& summary);
void write_summary_json(const std::vector<Summary>& summary, const std::string& path);

}  // namespace txpolicy
