/*
 * Copyright 2026 The treenet Authors.
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

#ifndef TREENET_CSV_HPP_
#define TREENET_CSV_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace treenet {

/// A CSV file held as strings. Cells are written back verbatim, so a table
/// read and written again is byte-identical up to line endings and quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of `name` in the header; throws DataError when absent.
  std::size_t column(std::string_view name) const;
  void add_row(std::vector<std::string> row);
};

/// Splits one record. Double-quoted fields may contain commas and doubled
/// quotes; surrounding whitespace of unquoted fields is trimmed.
std::vector<std::string> split_csv_record(std::string_view line);

/// Reads a header row and data rows. Blank lines are skipped; a row whose
/// width differs from the header raises DataError naming the line.
CsvTable read_csv(std::istream& in);
void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);

}  // namespace treenet

#endif  // TREENET_CSV_HPP_
