#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "photon_splitter/errors.hpp"

namespace psplit {

struct TableColumn {
  std::string name;
  std::vector<double> values;
};

struct Table {
  std::string name;
  std::vector<TableColumn> columns;  // equal lengths

  std::size_t n_rows() const { return columns.empty() ? 0 : columns[0].values.size(); }

  const TableColumn& column(const std::string& name_) const {
    for (const auto& c : columns)
      if (c.name == name_) return c;
    throw DomainError("no column named '" + name_ + "'");
  }
};

// Everything a protocol run produces: the estimates with their standard
// errors keyed by name ("<name>_stderr" carries the error bar), the raw
// per-point tables, and enough context (config echo + seed) to rerun it.
struct ExperimentReport {
  std::string name;
  std::map<std::string, std::string> config_echo;
  std::uint64_t seed = 0;
  std::vector<Table> tables;
  std::map<std::string, double> summary;

  const Table& table(const std::string& name_) const {
    for (const auto& t : tables)
      if (t.name == name_) return t;
    throw DomainError("no table named '" + name_ + "'");
  }
};

// Column lengths must agree within a table and summary scalars must be finite.
inline void validate_report(const ExperimentReport& report) {
  for (const auto& t : report.tables)
    for (const auto& c : t.columns)
      if (c.values.size() != t.n_rows())
        throw DimensionMismatch("ragged table '" + t.name + "'");
  for (const auto& [key, value] : report.summary)
    if (!std::isfinite(value)) throw DomainError("non-finite summary '" + key + "'");
}

}  // namespace psplit
