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

#ifndef TREENET_PLOTDATA_HPP_
#define TREENET_PLOTDATA_HPP_

#include <string>
#include <vector>

#include "treenet/csv.hpp"

namespace treenet {

/// Wide to long: one output row per (input row, value column), with the id
/// columns repeated and two trailing columns `series` and `value`. An empty
/// `value_columns` selects every non-id column. Cells are copied verbatim.
CsvTable melt(const CsvTable& wide, const std::vector<std::string>& id_columns,
              const std::vector<std::string>& value_columns = {});

/// Long to wide, the inverse of melt. Rows keep the first-appearance order of
/// their id tuple and series columns the first-appearance order of their
/// name. Duplicate or missing (id, series) cells raise DataError.
CsvTable pivot(const CsvTable& long_table,
               const std::vector<std::string>& id_columns);

}  // namespace treenet

#endif  // TREENET_PLOTDATA_HPP_
