#include "chanrecon/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace chanrecon {

std::string csv_format(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string csv_format(long long value) { return std::to_string(value); }

std::string csv_format(bool value) { return value ? "true" : "false"; }

void CsvArtifact::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw std::invalid_argument("csv: row width does not match header");
  }
  rows.push_back(std::move(row));
}

std::string CsvArtifact::render() const {
  std::string out;
  auto append_line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  append_line(header);
  for (const auto& row : rows) append_line(row);
  return out;
}

void CsvArtifact::write() const {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("csv: cannot open " + path);
  out << render();
}

}  // namespace chanrecon
