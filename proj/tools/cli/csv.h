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

#ifndef CDEFOREST_TOOLS_CSV_H_
#define CDEFOREST_TOOLS_CSV_H_

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cdeforest/error.h"
#include "cdeforest/matrix.h"

namespace cdeforest::cli {

// Malformed CSV input; the message names the file and line.
class CsvError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Numeric CSV with a mandatory header row.
struct CsvTable {
  std::vector<std::string> header;
  Matrix values;

  std::optional<std::size_t> ColumnIndex(const std::string& name) const;
  // Throws CsvError when any name is absent.
  Matrix Select(std::span<const std::string> names) const;
};

CsvTable ReadCsv(const std::string& path);

// Shortest decimal text that round-trips to the same double.
std::string FormatDouble(double value);

void WriteRow(std::ostream& out, std::span<const double> values);

}  // namespace cdeforest::cli

#endif  // CDEFOREST_TOOLS_CSV_H_
