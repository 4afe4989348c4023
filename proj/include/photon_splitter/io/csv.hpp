#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/experiments/report.hpp"
#include "photon_splitter/format.hpp"

namespace psplit {

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// Header row plus shortest round-trip decimals, ',' separated, '\n' endings.
inline std::string csv_from_table(const Table& table) {
  if (table.columns.empty()) throw DomainError("table has no columns");
  std::string text;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) text += ',';
    text += table.columns[c].name;
  }
  text += '\n';
  const std::size_t rows = table.n_rows();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) text += ',';
      text += format_double(table.columns[c].values[r]);
    }
    text += '\n';
  }
  return text;
}

inline void write_csv(const std::filesystem::path& path, const Table& table) {
  write_text_file(path, csv_from_table(table));
}

}  // namespace psplit
