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

#include "treenet/cart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "treenet/error.hpp"

namespace treenet {
namespace {

double gini(std::span<const double> counts, double total) {
  if (total <= 0.0) return 0.0;
  double sum_sq = 0.0;
  for (double c : counts) sum_sq += c * c;
  return 1.0 - sum_sq / (total * total);
}

// Sum of squared deviations from the mean.
double sse(double sum, double sum_sq, double n) {
  if (n <= 0.0) return 0.0;
  return std::max(0.0, sum_sq - sum * sum / n);
}

std::size_t class_of(double target, std::size_t n_classes) {
  const auto c = static_cast<std::size_t>(target);
  if (target < 0.0 || c >= n_classes || static_cast<double>(c) != target)
    throw DataError("class label outside [0, n_classes)");
  return c;
}

class Builder {
 public:
  Builder(const DataView& data, const CartParams& params, CartTree& tree)
      : data_(data), params_(params), tree_(tree) {
    all_features_.resize(data.n_features);
    std::iota(all_features_.begin(), all_features_.end(), std::size_t{0});
  }

  int grow(std::vector<std::size_t> rows, int depth, const Rng& rng) {
    CartNode node;
    node.n_samples = rows.size();
    node.payload = leaf_payload(data_, rows, params_);
    const int id = tree_.add_node(std::move(node));

    const bool depth_left = params_.max_depth < 0 || depth < params_.max_depth;
    if (!depth_left || rows.size() < 2 * params_.min_samples_leaf) return id;

    std::optional<Split> split;
    if (params_.mtry == 0 || params_.mtry >= data_.n_features) {
      split = best_split(data_, rows, all_features_, params_);
    } else {
      Rng node_rng = rng.split(0x5eed);
      std::vector<std::size_t> features = all_features_;
      for (std::size_t i = 0; i < params_.mtry; ++i) {
        const std::size_t j = i + node_rng.below(features.size() - i);
        std::swap(features[i], features[j]);
      }
      features.resize(params_.mtry);
      std::sort(features.begin(), features.end());
      split = best_split(data_, rows, features, params_);
    }
    if (!split) return id;

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) {
      (data_.at(r, split->feature) <= split->threshold ? left : right)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int left_id = grow(std::move(left), depth + 1, rng.split(0));
    const int right_id = grow(std::move(right), depth + 1, rng.split(1));
    CartNode& parent = tree_.node(id);
    parent.feature = static_cast<int>(split->feature);
    parent.threshold = split->threshold;
    parent.left = left_id;
    parent.right = right_id;
    return id;
  }

 private:
  const DataView& data_;
  const CartParams& params_;
  CartTree& tree_;
  std::vector<std::size_t> all_features_;
};

}  // namespace

double node_impurity(const DataView& data, std::span<const std::size_t> rows,
                     const CartParams& params) {
  const double n = static_cast<double>(rows.size());
  if (params.task == Task::classification) {
    std::vector<double> counts(params.n_classes, 0.0);
    for (std::size_t r : rows) counts[class_of(data.targets[r], params.n_classes)] += 1.0;
    return gini(counts, n);
  }
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t r : rows) {
    sum += data.targets[r];
    sum_sq += data.targets[r] * data.targets[r];
  }
  return n > 0.0 ? sse(sum, sum_sq, n) / n : 0.0;
}

std::optional<Split> best_split(const DataView& data,
                                std::span<const std::size_t> rows,
                                std::span<const std::size_t> candidate_features,
                                const CartParams& params) {
  const std::size_t n = rows.size();
  const std::size_t min_leaf = std::max<std::size_t>(1, params.min_samples_leaf);
  if (n < 2 * min_leaf) return std::nullopt;
  const double parent = node_impurity(data, rows, params);
  if (parent <= 0.0) return std::nullopt;
  const double total = static_cast<double>(n);
  const bool classify = params.task == Task::classification;

  std::optional<Split> best;
  std::vector<std::pair<double, std::size_t>> sorted(n);
  std::vector<double> left_counts, right_counts, parent_counts;
  if (classify) {
    parent_counts.assign(params.n_classes, 0.0);
    for (std::size_t r : rows)
      parent_counts[class_of(data.targets[r], params.n_classes)] += 1.0;
  }
  double parent_sum = 0.0, parent_sum_sq = 0.0;
  if (!classify) {
    for (std::size_t r : rows) {
      parent_sum += data.targets[r];
      parent_sum_sq += data.targets[r] * data.targets[r];
    }
  }

  for (std::size_t feature : candidate_features) {
    for (std::size_t i = 0; i < n; ++i)
      sorted[i] = {data.at(rows[i], feature), rows[i]};
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front().first == sorted.back().first) continue;

    if (classify) {
      left_counts.assign(params.n_classes, 0.0);
      right_counts = parent_counts;
    }
    double left_sum = 0.0, left_sum_sq = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double target = data.targets[sorted[i].second];
      if (classify) {
        const std::size_t c = static_cast<std::size_t>(target);
        left_counts[c] += 1.0;
        right_counts[c] -= 1.0;
      } else {
        left_sum += target;
        left_sum_sq += target * target;
      }
      const std::size_t n_left = i + 1;
      const std::size_t n_right = n - n_left;
      if (n_left < min_leaf) continue;
      if (n_right < min_leaf) break;
      const double lo = sorted[i].first;
      const double hi = sorted[i + 1].first;
      if (!(lo < hi)) continue;

      const double nl = static_cast<double>(n_left);
      const double nr = static_cast<double>(n_right);
      double weighted;
      if (classify) {
        weighted = (nl * gini(left_counts, nl) + nr * gini(right_counts, nr)) /
                   total;
      } else {
        weighted = (sse(left_sum, left_sum_sq, nl) +
                    sse(parent_sum - left_sum, parent_sum_sq - left_sum_sq, nr)) /
                   total;
      }
      // Zero-gain splits of an impure node are allowed; rounding can push an
      // exact zero slightly negative.
      const double decrease = std::max(0.0, parent - weighted);
      if (parent - weighted < -1e-12 * parent) continue;
      if (!best || decrease > best->decrease) {
        double threshold = std::midpoint(lo, hi);
        if (!(threshold < hi)) threshold = lo;
        best = Split{feature, threshold, decrease};
      }
    }
  }
  return best;
}

std::vector<double> leaf_payload(const DataView& data,
                                 std::span<const std::size_t> rows,
                                 const CartParams& params) {
  if (params.task == Task::classification) {
    std::vector<double> counts(params.n_classes, 0.0);
    for (std::size_t r : rows)
      counts[class_of(data.targets[r], params.n_classes)] += 1.0;
    if (!rows.empty()) {
      const double n = static_cast<double>(rows.size());
      for (auto& c : counts) c /= n;
    }
    return counts;
  }
  double sum = 0.0;
  for (std::size_t r : rows) sum += data.targets[r];
  return {rows.empty() ? 0.0 : sum / static_cast<double>(rows.size())};
}

CartTree::CartTree(Task task, std::size_t n_features, std::size_t n_classes)
    : task_(task), n_features_(n_features), n_classes_(n_classes) {
  if (task == Task::classification && n_classes == 0)
    throw DomainError("classification needs at least one class");
}

int CartTree::add_node(CartNode node) {
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size() - 1);
}

std::span<const double> CartTree::predict(std::span<const double> x) const {
  if (x.size() != n_features_)
    throw DomainError("prediction input has " + std::to_string(x.size()) +
                      " features, tree expects " + std::to_string(n_features_));
  int id = 0;
  while (!node(id).is_leaf()) {
    const CartNode& n = node(id);
    id = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return node(id).payload;
}

std::size_t CartTree::predict_class(std::span<const double> x) const {
  return argmax(predict(x));
}

int CartTree::depth() const {
  if (nodes_.empty()) return 0;
  int deepest = 0;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    const CartNode& n = node(id);
    if (!n.is_leaf()) {
      stack.push_back({n.left, d + 1});
      stack.push_back({n.right, d + 1});
    }
  }
  return deepest;
}

std::size_t CartTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const CartNode& n) { return n.is_leaf(); }));
}

std::optional<std::size_t> CartTree::root_feature() const {
  if (nodes_.empty() || nodes_.front().is_leaf()) return std::nullopt;
  return static_cast<std::size_t>(nodes_.front().feature);
}

nlohmann::json CartTree::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const CartNode& n : nodes_) {
    nodes.push_back({{"feature", n.feature},
                     {"threshold", n.threshold},
                     {"left", n.left},
                     {"right", n.right},
                     {"n_samples", n.n_samples},
                     {"payload", n.payload}});
  }
  return {{"task", task_ == Task::classification ? "classification" : "regression"},
          {"n_features", n_features_},
          {"n_classes", n_classes_},
          {"nodes", std::move(nodes)}};
}

CartTree fit_cart(const DataView& data, std::span<const std::size_t> rows,
                  const CartParams& params, const Rng& rng) {
  if (rows.empty()) throw DataError("cannot fit a tree on an empty dataset");
  if (data.n_features == 0) throw DataError("dataset has no features");
  CartTree tree(params.task, data.n_features, params.n_classes);
  Builder builder(data, params, tree);
  builder.grow(std::vector<std::size_t>(rows.begin(), rows.end()), 0, rng);
  return tree;
}

CartTree fit_cart(const DataView& data, const CartParams& params,
                  std::uint64_t seed) {
  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return fit_cart(data, rows, params, Rng(seed));
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

double accuracy_score(std::span<const std::size_t> predicted,
                      std::span<const double> labels) {
  if (predicted.size() != labels.size())
    throw DataError("prediction and label counts differ");
  if (labels.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    hits += static_cast<double>(predicted[i]) == labels[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double r2_score(std::span<const double> predicted,
                std::span<const double> targets) {
  if (predicted.size() != targets.size())
    throw DataError("prediction and target counts differ");
  if (targets.empty()) return 0.0;
  const double mean = std::accumulate(targets.begin(), targets.end(), 0.0) /
                      static_cast<double>(targets.size());
  double residual = 0.0, total = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    residual += (targets[i] - predicted[i]) * (targets[i] - predicted[i]);
    total += (targets[i] - mean) * (targets[i] - mean);
  }
  if (total == 0.0) return residual == 0.0 ? 1.0 : 0.0;
  return 1.0 - residual / total;
}

double score_tree(const CartTree& tree, const DataView& data) {
  if (tree.task() == Task::classification) {
    std::vector<std::size_t> predicted(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
      predicted[i] = tree.predict_class(data.row(i));
    return accuracy_score(predicted, data.targets);
  }
  std::vector<double> predicted(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    predicted[i] = tree.predict_value(data.row(i));
  return r2_score(predicted, data.targets);
}

void shuffle(std::span<std::size_t> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(values[i - 1], values[j]);
  }
}

DepthSearch cross_validate_depth(const DataView& data, CartParams params,
                                 std::size_t folds,
                                 std::span<const int> depth_grid,
                                 std::uint64_t seed) {
  if (depth_grid.empty()) throw DomainError("depth grid is empty");
  if (folds < 2) throw DomainError("cross validation needs at least 2 folds");
  const std::size_t n = data.size();
  if (n < folds) throw DataError("fewer rows than folds");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  shuffle(order, rng);

  DepthSearch result;
  double best_score = 0.0;
  for (int depth : depth_grid) {
    params.max_depth = depth;
    double total = 0.0;
    for (std::size_t f = 0; f < folds; ++f) {
      const std::size_t begin = f * n / folds;
      const std::size_t end = (f + 1) * n / folds;
      std::vector<std::size_t> train;
      train.reserve(n - (end - begin));
      train.insert(train.end(), order.begin(), order.begin() + begin);
      train.insert(train.end(), order.begin() + end, order.end());
      const CartTree tree = fit_cart(data, train, params, Rng(seed, f + 1));

      std::vector<double> held_features, held_targets;
      for (std::size_t i = begin; i < end; ++i) {
        const auto row = data.row(order[i]);
        held_features.insert(held_features.end(), row.begin(), row.end());
        held_targets.push_back(data.targets[order[i]]);
      }
      const DataView held{held_features, held_targets, data.n_features};
      total += score_tree(tree, held);
    }
    const double mean = total / static_cast<double>(folds);
    result.scores.emplace_back(depth, mean);
    if (result.scores.size() == 1 || mean > best_score ||
        (mean == best_score && depth < result.best_depth)) {
      best_score = mean;
      result.best_depth = depth;
    }
  }
  return result;
}

}  // namespace treenet
