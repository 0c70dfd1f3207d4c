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

#include "treenet/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "treenet/csv.hpp"
#include "treenet/error.hpp"

namespace treenet {
namespace {

std::optional<double> parse_number(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

Matrix Dataset::subset(std::span<const std::size_t> rows) const {
  Matrix m;
  m.n_features = data.n_features;
  m.features.reserve(rows.size() * m.n_features);
  m.targets.reserve(rows.size());
  for (std::size_t r : rows) {
    const auto row = data.view().row(r);
    m.features.insert(m.features.end(), row.begin(), row.end());
    m.targets.push_back(data.targets[r]);
  }
  return m;
}

SplitIndices split_rows(std::size_t n, const SplitFractions& f, std::uint64_t seed) {
  const double sum = f.train + f.validation + f.test;
  if (f.train < 0 || f.validation < 0 || f.test < 0 || std::abs(sum - 1.0) > 1e-9)
    throw DomainError("split fractions must be non-negative and sum to 1");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  shuffle(order, rng);
  const auto n_train = static_cast<std::size_t>(std::floor(f.train * static_cast<double>(n)));
  const auto n_val = std::min(
      n - n_train, static_cast<std::size_t>(std::floor(f.validation * static_cast<double>(n))));
  SplitIndices s;
  s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.validation.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                      order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());
  return s;
}

void check_partition(const SplitIndices& split, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (const auto* part : {&split.train, &split.validation, &split.test}) {
    for (std::size_t i : *part) {
      if (i >= n) throw DataError("split index " + std::to_string(i) + " out of range");
      if (seen[i]) throw DataError("split index " + std::to_string(i) + " repeated");
      seen[i] = 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) throw DataError("row " + std::to_string(i) + " missing from split");
}

Dataset parse_csv_dataset(std::istream& in, const LoadOptions& options) {
  const CsvTable table = read_csv(in);
  std::size_t label_col = 0;
  try {
    label_col = table.column(options.label_column);
  } catch (const DataError&) {
    throw DataError("label column '" + options.label_column + "' not found");
  }
  Dataset ds;
  ds.task = options.task;
  ds.label_name = options.label_column;
  for (std::size_t c = 0; c < table.header.size(); ++c)
    if (c != label_col) ds.feature_names.push_back(table.header[c]);
  ds.data.n_features = ds.feature_names.size();
  if (ds.data.n_features == 0) throw DataError("no feature columns");

  std::unordered_map<std::string, std::size_t> ids;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    // Data row r sits on line r + 2 when no blank lines intervene.
    const std::string where = "row " + std::to_string(r + 1);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == label_col) continue;
      const auto v = parse_number(row[c]);
      if (!v)
        throw DataError(where + ", column '" + table.header[c] +
                        "': non-numeric value '" + row[c] + "'");
      ds.data.features.push_back(*v);
    }
    const std::string& label = row[label_col];
    if (label.empty()) throw DataError(where + ": missing label");
    if (ds.task == Task::regression) {
      const auto v = parse_number(label);
      if (!v)
        throw DataError(where + ", column '" + table.header[label_col] +
                        "': non-numeric target '" + label + "'");
      ds.data.targets.push_back(*v);
    } else {
      auto [it, inserted] = ids.try_emplace(label, ds.class_labels.size());
      if (inserted) ds.class_labels.push_back(label);
      ds.data.targets.push_back(static_cast<double>(it->second));
    }
  }
  if (ds.size() == 0) throw DataError("CSV has no data rows");
  if (options.explicit_split) {
    check_partition(*options.explicit_split, ds.size());
    ds.split = *options.explicit_split;
  } else {
    ds.split = split_rows(ds.size(), options.fractions, options.seed);
  }
  return ds;
}

Dataset load_csv(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return parse_csv_dataset(in, options);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<std::size_t> read_index_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  for (char& c : text)
    if (c == ',') c = ' ';
  std::istringstream tokens(text);
  std::vector<std::size_t> out;
  std::string token;
  while (tokens >> token) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw DataError(path + ": bad index '" + token + "'");
    out.push_back(v);
  }
  return out;
}

Dataset dataset_from_samples(const SampleSet& samples, Task task,
                             const SplitFractions& fractions, std::uint64_t seed) {
  Dataset ds;
  ds.task = task;
  ds.label_name = "y";
  for (std::size_t j = 0; j < samples.dim; ++j)
    ds.feature_names.push_back("x" + std::to_string(j + 1));
  ds.data.n_features = samples.dim;
  ds.data.features = samples.x;
  ds.data.targets = samples.y;
  if (task == Task::classification) ds.class_labels = {"0", "1"};
  ds.split = split_rows(ds.size(), fractions, seed);
  return ds;
}

}  // namespace treenet
