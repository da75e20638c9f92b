#include "robinlab/csv.hpp"

#include <iomanip>
#include <limits>
#include <stdexcept>

namespace robinlab::csv {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

std::string fmt(int v) { return std::to_string(v); }

void Table::write(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("csv: cannot open " + path + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    f << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::runtime_error("csv: ragged row in " + path);
    for (std::size_t i = 0; i < row.size(); ++i)
      f << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
}

Table Table::read(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("csv: cannot open " + path);
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (first) {
      t.header = cells;
      first = false;
    } else {
      t.rows.push_back(cells);
    }
  }
  return t;
}

std::size_t Table::col(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::runtime_error("csv: no column " + name);
}

double Table::num(std::size_t row, const std::string& name) const {
  return std::stod(rows.at(row).at(col(name)));
}

const std::string& Table::str(std::size_t row, const std::string& name) const {
  return rows.at(row).at(col(name));
}

}  // namespace robinlab::csv
