#pragma once

#include <string>
#include <vector>

namespace chanrecon {

/// Deterministic CSV artifact: UTF-8, comma-delimited, LF endings, all
/// floats printed with 9 significant digits.
struct CsvArtifact {
  std::string path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string render() const;
  void write() const;
};

std::string csv_format(double value);
std::string csv_format(long long value);
std::string csv_format(bool value);

}  // namespace chanrecon
