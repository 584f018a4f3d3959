#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftfem/mesh.hpp"  // detail::g17

namespace shiftfem {

struct TableRow {
  double H = 0.0;
  int cells = 0;
  int dofs = 0;
  double error = 0.0;
  std::optional<double> rate;  ///< absent on the last row
};

/// Rows of an error-vs-resolution sweep plus descriptive metadata. Only the
/// rows are serialized; CSV output carries full precision and no timestamps,
/// text output mirrors the 3-significant-digit benchmark layout.
struct ConvergenceTable {
  std::vector<TableRow> rows;
  std::string problem;
  std::string variant;
  std::string norm = "energy";
  std::string reference;
  int degree = 0;
  double epsilon = 0.0;
};

inline constexpr const char* kCsvHeader = "H,cells,dofs,energy_error,rate";

inline std::string to_csv(const ConvergenceTable& table) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const TableRow& r : table.rows) {
    out += detail::g17(r.H);
    out += ',';
    out += std::to_string(r.cells);
    out += ',';
    out += std::to_string(r.dofs);
    out += ',';
    out += detail::g17(r.error);
    out += ',';
    if (r.rate) out += detail::g17(*r.rate);
    out += '\n';
  }
  return out;
}

inline ConvergenceTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::invalid_argument("parse_csv: missing header '" + std::string(kCsvHeader) + "'");
  ConvergenceTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    TableRow row;
    if (!std::getline(ls, field, ',')) throw std::invalid_argument("parse_csv: bad row");
    row.H = std::stod(field);
    if (!std::getline(ls, field, ',')) throw std::invalid_argument("parse_csv: bad row");
    row.cells = std::stoi(field);
    if (!std::getline(ls, field, ',')) throw std::invalid_argument("parse_csv: bad row");
    row.dofs = std::stoi(field);
    if (!std::getline(ls, field, ',')) throw std::invalid_argument("parse_csv: bad row");
    row.error = std::stod(field);
    if (std::getline(ls, field, ',') && !field.empty()) row.rate = std::stod(field);
    table.rows.push_back(row);
  }
  return table;
}

/// Aligned plain-text table; errors with 3 significant digits, rates with two
/// decimals.
inline std::string to_text(const ConvergenceTable& table) {
  std::string out;
  char buf[128];
  if (!table.problem.empty()) {
    std::snprintf(buf, sizeof buf, "# %s, %s mesh, k=%d, eps=%g, %s norm%s%s\n",
                  table.problem.c_str(), table.variant.c_str(), table.degree,
                  table.epsilon, table.norm.c_str(),
                  table.reference.empty() ? "" : ", error vs ",
                  table.reference.c_str());
    out += buf;
  }
  out += "     H   cells    dofs       error    rate\n";
  for (const TableRow& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%6.2f %7d %7d %11.2e", r.H, r.cells, r.dofs, r.error);
    out += buf;
    if (r.rate) {
      std::snprintf(buf, sizeof buf, " %7.2f", *r.rate);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace shiftfem
