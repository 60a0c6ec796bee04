/*
 * Copyright 2026 The cdeforest Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli/csv.h"

#include <charconv>
#include <fstream>

namespace cdeforest::cli {

namespace {

std::string Trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(',', start);
    fields.push_back(Trim(line.substr(start, end - start)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return fields;
}

}  // namespace

std::optional<std::size_t> CsvTable::ColumnIndex(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return c;
  }
  return std::nullopt;
}

Matrix CsvTable::Select(std::span<const std::string> names) const {
  std::vector<std::size_t> cols;
  for (const std::string& name : names) {
    const auto c = ColumnIndex(name);
    if (!c) throw CsvError("CSV has no column named '" + name + "'");
    cols.push_back(*c);
  }
  Matrix out(values.rows(), cols.size());
  for (std::size_t i = 0; i < values.rows(); ++i) {
    for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = values(i, cols[k]);
  }
  return out;
}

CsvTable ReadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path + "' for reading");
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!Trim(line).empty()) break;
  }
  if (Trim(line).empty()) throw CsvError(path + ": missing header row");
  table.header = SplitFields(line);
  const std::size_t width = table.header.size();

  std::vector<double> data;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::vector<std::string> fields = SplitFields(line);
    if (fields.size() != width) {
      throw CsvError(path + ":" + std::to_string(line_no) + ": expected " +
                     std::to_string(width) + " fields, found " +
                     std::to_string(fields.size()));
    }
    for (const std::string& f : fields) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
        throw CsvError(path + ":" + std::to_string(line_no) + ": '" + f +
                       "' is not a number");
      }
      data.push_back(v);
    }
    ++rows;
  }
  table.values = Matrix(rows, width, std::move(data));
  return table;
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void WriteRow(std::ostream& out, std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out << ',';
    out << FormatDouble(values[k]);
  }
  out << '\n';
}

}  // namespace cdeforest::cli
