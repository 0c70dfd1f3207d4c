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

#ifndef TREENET_CART_HPP_
#define TREENET_CART_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "treenet/rng.hpp"

namespace treenet {

enum class Task { classification, regression };

/// Non-owning row-major feature matrix plus targets. For classification the
/// targets hold class ids 0..n_classes-1 stored as doubles.
struct DataView {
  std::span<const double> features;
  std::span<const double> targets;
  std::size_t n_features = 0;

  std::size_t size() const { return targets.size(); }
  std::span<const double> row(std::size_t i) const {
    return features.subspan(i * n_features, n_features);
  }
  double at(std::size_t i, std::size_t j) const {
    return features[i * n_features + j];
  }
};

struct CartParams {
  Task task = Task::classification;
  std::size_t n_classes = 2;
  /// Negative means unlimited.
  int max_depth = -1;
  std::size_t min_samples_leaf = 1;
  /// Features examined per node; 0 means all of them.
  std::size_t mtry = 0;
};

struct CartNode {
  /// -1 marks a leaf.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::size_t n_samples = 0;
  /// Class frequencies (classification) or {mean} (regression).
  std::vector<double> payload;

  bool is_leaf() const { return feature < 0; }
};

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;
  double decrease = 0.0;
};

/// Gini impurity of class counts, or the variance of the targets.
double node_impurity(const DataView& data, std::span<const std::size_t> rows,
                     const CartParams& params);

/// Exhaustive CART split search over midpoints of consecutive distinct
/// values. Samples with x <= threshold go left. Ties on the decrease keep
/// the lowest feature index, then the lowest threshold. Returns nullopt when
/// no admissible split decreases the impurity.
std::optional<Split> best_split(const DataView& data,
                                std::span<const std::size_t> rows,
                                std::span<const std::size_t> candidate_features,
                                const CartParams& params);

/// Leaf payload for `rows` (duplicates count with multiplicity).
std::vector<double> leaf_payload(const DataView& data,
                                 std::span<const std::size_t> rows,
                                 const CartParams& params);

class CartTree {
 public:
  CartTree(Task task, std::size_t n_features, std::size_t n_classes);

  int add_node(CartNode node);
  CartNode& node(int id) { return nodes_[static_cast<std::size_t>(id)]; }
  const CartNode& node(int id) const {
    return nodes_[static_cast<std::size_t>(id)];
  }
  const std::vector<CartNode>& nodes() const { return nodes_; }

  Task task() const { return task_; }
  std::size_t n_features() const { return n_features_; }
  std::size_t n_classes() const { return n_classes_; }
  /// Width of predict(): n_classes for classification, 1 for regression.
  std::size_t output_width() const {
    return task_ == Task::classification ? n_classes_ : 1;
  }

  std::span<const double> predict(std::span<const double> x) const;
  std::size_t predict_class(std::span<const double> x) const;
  double predict_value(std::span<const double> x) const {
    return predict(x)[0];
  }

  int depth() const;
  std::size_t leaf_count() const;
  /// Feature index of the root split, nullopt for a single-leaf tree.
  std::optional<std::size_t> root_feature() const;

  /// {"task", "n_features", "n_classes", "nodes": [{feature, threshold,
  /// left, right, n_samples, payload}]}; leaves carry feature -1.
  nlohmann::json to_json() const;

 private:
  Task task_;
  std::size_t n_features_;
  std::size_t n_classes_;
  std::vector<CartNode> nodes_;
};

/// Greedy CART. With mtry < n_features a uniform feature subset is drawn at
/// every node from a generator derived from the node's path, so the tree
/// depends only on (data, params, rng).
CartTree fit_cart(const DataView& data, std::span<const std::size_t> rows,
                  const CartParams& params, const Rng& rng);
CartTree fit_cart(const DataView& data, const CartParams& params,
                  std::uint64_t seed);

/// Index of the largest entry; ties resolve to the smallest index.
std::size_t argmax(std::span<const double> values);

double accuracy_score(std::span<const std::size_t> predicted,
                      std::span<const double> labels);
/// 1 - SSE/SST. A constant target scores 1 when matched exactly, else 0.
double r2_score(std::span<const double> predicted,
                std::span<const double> targets);

/// Accuracy or R^2 of `tree` on `data`.
double score_tree(const CartTree& tree, const DataView& data);

struct DepthSearch {
  int best_depth = 0;
  /// (depth, mean validation score) in grid order.
  std::vector<std::pair<int, double>> scores;
};

/// K-fold cross validation over max_depth. Rows are shuffled once with
/// `seed` and cut into contiguous folds. Ties go to the smallest depth.
DepthSearch cross_validate_depth(const DataView& data, CartParams params,
                                 std::size_t folds,
                                 std::span<const int> depth_grid,
                                 std::uint64_t seed);

/// Deterministic Fisher-Yates shuffle driven by `rng`.
void shuffle(std::span<std::size_t> values, Rng& rng);

}  // namespace treenet

#endif  // TREENET_CART_HPP_
