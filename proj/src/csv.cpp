#include "musa/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace musa {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

SensorWindow read_window_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line))
    throw ParseError(path + ": empty file, expected a header row");

  std::vector<std::string> names = split_csv_line(line);
  const size_t p = names.size();
  if (p == 0) throw ParseError(path + ":1: header row has no columns");
  for (auto& name : names) name = trim(name);

  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != p)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(p) + " fields, got " +
                       std::to_string(fields.size()));
    std::vector<double> row(p);
    for (size_t j = 0; j < p; ++j) {
      const std::string cell = trim(fields[j]);
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": non-numeric value '" + cell + "' in column " +
                         std::to_string(j + 1));
      row[j] = value;
    }
    rows.push_back(std::move(row));
  }

  SensorWindow w;
  w.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(p));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < p; ++j)
      w.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  w.column_names = names;
  w.validate();
  return w;
}

void write_window_csv(const std::string& path, const SensorWindow& w) {
  std::ostringstream out;
  out.precision(17);
  const Index p = w.cols();
  for (Index j = 0; j < p; ++j) {
    out << (w.column_names ? (*w.column_names)[static_cast<size_t>(j)]
                           : "v" + std::to_string(j + 1));
    out << (j + 1 < p ? ',' : '\n');
  }
  for (Index i = 0; i < w.rows(); ++i)
    for (Index j = 0; j < p; ++j)
      out << w.values(i, j) << (j + 1 < p ? ',' : '\n');
  write_file_atomic(path, out.str());
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + tmp);
    out << contents;
    if (!out) throw ParseError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ParseError("cannot move " + tmp + " into place");
  }
}

}  // namespace musa
