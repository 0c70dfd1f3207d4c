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

#ifndef TREENET_DATASET_HPP_
#define TREENET_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treenet/cart.hpp"
#include "treenet/chessboard.hpp"

namespace treenet {

/// Row-major features and targets that own their storage.
struct Matrix {
  std::size_t n_features = 0;
  std::vector<double> features;
  std::vector<double> targets;

  DataView view() const { return {features, targets, n_features}; }
  std::size_t size() const { return targets.size(); }
};

struct SplitFractions {
  double train = 0.6;
  double validation = 0.2;
  double test = 0.2;
};

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

struct LoadOptions {
  std::string label_column;
  Task task = Task::classification;
  SplitFractions fractions;
  /// When set, replaces the random split. Must partition [0, n).
  std::optional<SplitIndices> explicit_split;
  std::uint64_t seed = 0;
};

struct Dataset {
  std::vector<std::string> feature_names;
  std::string label_name;
  Task task = Task::classification;
  Matrix data;
  /// Original label text of class id i (classification only).
  std::vector<std::string> class_labels;
  SplitIndices split;

  std::size_t size() const { return data.size(); }
  std::size_t n_features() const { return data.n_features; }
  std::size_t n_classes() const {
    return task == Task::classification ? class_labels.size() : 1;
  }
  Matrix subset(std::span<const std::size_t> rows) const;
  Matrix train() const { return subset(split.train); }
  Matrix validation() const { return subset(split.validation); }
  Matrix test() const { return subset(split.test); }
};

/// Shuffles 0..n-1 with Rng(seed) and cuts it into floor(train n),
/// floor(validation n) and the remaining rows.
SplitIndices split_rows(std::size_t n, const SplitFractions& fractions,
                        std::uint64_t seed);
/// Throws DataError unless the three index lists partition [0, n).
void check_partition(const SplitIndices& split, std::size_t n);

/// Parses a header row plus numeric feature cells. Classification labels are
/// mapped to ids in order of first appearance.
Dataset parse_csv_dataset(std::istream& in, const LoadOptions& options);
Dataset load_csv(const std::string& path, const LoadOptions& options);
/// Reads whitespace or comma separated row indices.
std::vector<std::size_t> read_index_file(const std::string& path);

/// Wraps chessboard samples (labels 0/1) as a dataset.
Dataset dataset_from_samples(const SampleSet& samples, Task task,
                             const SplitFractions& fractions,
                             std::uint64_t seed);

}  // namespace treenet

#endif  // TREENET_DATASET_HPP_
