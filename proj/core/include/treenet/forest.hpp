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

#ifndef TREENET_FOREST_HPP_
#define TREENET_FOREST_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "treenet/cart.hpp"
#include "treenet/rng.hpp"

namespace treenet {

enum class ForestKind { breiman, completely_random };

struct ForestSpec {
  ForestKind kind = ForestKind::breiman;
  std::size_t n_trees = 100;
  /// Negative means unlimited.
  int max_depth = -1;
  std::size_t min_samples_leaf = 1;
  /// 0 selects the default: ceil(sqrt(d)) for classification, d for
  /// regression. Ignored by completely random forests.
  std::size_t mtry = 0;
  bool bootstrap = true;

  void validate() const;
  nlohmann::json to_json() const;
  static ForestSpec from_json(const nlohmann::json& j);
  friend bool operator==(const ForestSpec&, const ForestSpec&) = default;
};

std::size_t effective_mtry(const ForestSpec& spec, Task task,
                           std::size_t n_features);

class Forest {
 public:
  Forest(Task task, std::size_t n_classes, std::vector<CartTree> trees);

  Task task() const { return task_; }
  std::size_t n_classes() const { return n_classes_; }
  std::size_t output_width() const {
    return task_ == Task::classification ? n_classes_ : 1;
  }
  const std::vector<CartTree>& trees() const { return trees_; }
  std::size_t size() const { return trees_.size(); }

  /// Average of the tree outputs, accumulated in tree order.
  void predict_into(std::span<const double> x, std::span<double> out) const;
  std::vector<double> predict(std::span<const double> x) const;
  std::size_t predict_class(std::span<const double> x) const;
  double predict_value(std::span<const double> x) const;

 private:
  Task task_;
  std::size_t n_classes_;
  std::vector<CartTree> trees_;
};

/// Completely random tree: a uniformly drawn non-constant feature and a
/// threshold uniform between that feature's node minimum and maximum, grown
/// until purity or max_depth.
CartTree fit_random_tree(const DataView& data, std::span<const std::size_t> rows,
                         const CartParams& params, const Rng& rng);

/// Tree t draws from rng.split(t), so results do not depend on `jobs`.
Forest fit_forest(const ForestSpec& spec, const DataView& data, Task task,
                  std::size_t n_classes, const Rng& rng, unsigned jobs = 1);
Forest fit_forest(const ForestSpec& spec, const DataView& data, Task task,
                  std::size_t n_classes, std::uint64_t seed, unsigned jobs = 1);

double score_forest(const Forest& forest, const DataView& data);

}  // namespace treenet

#endif  // TREENET_FOREST_HPP_
