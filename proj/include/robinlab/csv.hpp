#pragma once
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace robinlab::csv {

// Minimal CSV table: fixed header, rows of strings.  Numeric values are
// written with max_digits10 so that re-reading them is lossless, which the
// `check` subcommand relies on.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(const std::string& path) const;
  static Table read(const std::string& path);

  std::size_t col(const std::string& name) const;
  double num(std::size_t row, const std::string& name) const;
  const std::string& str(std::size_t row, const std::string& name) const;
};

std::string fmt(double v);
std::string fmt(int v);

}  // namespace robinlab::csv
