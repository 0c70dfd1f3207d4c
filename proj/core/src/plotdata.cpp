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

#include "treenet/plotdata.hpp"

#include <algorithm>
#include <map>

#include "treenet/error.hpp"

namespace treenet {

CsvTable melt(const CsvTable& wide, const std::vector<std::string>& id_columns,
              const std::vector<std::string>& value_columns) {
  std::vector<std::size_t> ids;
  for (const auto& name : id_columns) ids.push_back(wide.column(name));
  std::vector<std::size_t> values;
  if (value_columns.empty()) {
    for (std::size_t c = 0; c < wide.header.size(); ++c)
      if (std::find(ids.begin(), ids.end(), c) == ids.end()) values.push_back(c);
  } else {
    for (const auto& name : value_columns) values.push_back(wide.column(name));
  }
  for (const auto& reserved : {"series", "value"})
    if (std::find(id_columns.begin(), id_columns.end(), reserved) != id_columns.end())
      throw DataError(std::string("id column may not be named '") + reserved + "'");

  CsvTable out;
  out.header = id_columns;
  out.header.push_back("series");
  out.header.push_back("value");
  for (const auto& row : wide.rows) {
    for (std::size_t v : values) {
      std::vector<std::string> r;
      r.reserve(out.header.size());
      for (std::size_t i : ids) r.push_back(row[i]);
      r.push_back(wide.header[v]);
      r.push_back(row[v]);
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

CsvTable pivot(const CsvTable& long_table, const std::vector<std::string>& id_columns) {
  std::vector<std::size_t> ids;
  for (const auto& name : id_columns) ids.push_back(long_table.column(name));
  const std::size_t series_col = long_table.column("series");
  const std::size_t value_col = long_table.column("value");

  std::vector<std::string> series;
  std::map<std::string, std::size_t> series_index;
  std::vector<std::vector<std::string>> keys;
  std::map<std::vector<std::string>, std::size_t> key_index;
  for (const auto& row : long_table.rows) {
    if (series_index.try_emplace(row[series_col], series.size()).second)
      series.push_back(row[series_col]);
    std::vector<std::string> key;
    for (std::size_t i : ids) key.push_back(row[i]);
    if (key_index.try_emplace(key, keys.size()).second) keys.push_back(key);
  }

  CsvTable out;
  out.header = id_columns;
  out.header.insert(out.header.end(), series.begin(), series.end());
  std::vector<std::vector<char>> filled(keys.size(), std::vector<char>(series.size(), 0));
  for (const auto& key : keys) {
    std::vector<std::string> r = key;
    r.resize(out.header.size());
    out.rows.push_back(std::move(r));
  }
  for (const auto& row : long_table.rows) {
    std::vector<std::string> key;
    for (std::size_t i : ids) key.push_back(row[i]);
    const std::size_t k = key_index.at(key);
    const std::size_t s = series_index.at(row[series_col]);
    if (filled[k][s])
      throw DataError("duplicate value for series '" + row[series_col] + "'");
    filled[k][s] = 1;
    out.rows[k][id_columns.size() + s] = row[value_col];
  }
  for (std::size_t k = 0; k < keys.size(); ++k)
    for (std::size_t s = 0; s < series.size(); ++s)
      if (!filled[k][s])
        throw DataError("missing value for series '" + series[s] + "'");
  return out;
}

}  // namespace treenet
