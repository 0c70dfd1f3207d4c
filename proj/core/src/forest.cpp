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

#include "treenet/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "treenet/error.hpp"
#include "treenet/parallel.hpp"

namespace treenet {
namespace {

bool is_pure(const DataView& data, std::span<const std::size_t> rows) {
  for (std::size_t r : rows) {
    if (data.targets[r] != data.targets[rows.front()]) return false;
  }
  return true;
}

class RandomBuilder {
 public:
  RandomBuilder(const DataView& data, const CartParams& params, CartTree& tree)
      : data_(data), params_(params), tree_(tree) {}

  int grow(std::vector<std::size_t> rows, int depth, const Rng& rng) {
    CartNode node;
    node.n_samples = rows.size();
    node.payload = leaf_payload(data_, rows, params_);
    const int id = tree_.add_node(std::move(node));

    const std::size_t min_leaf = std::max<std::size_t>(1, params_.min_samples_leaf);
    const bool depth_left = params_.max_depth < 0 || depth < params_.max_depth;
    if (!depth_left || rows.size() < 2 * min_leaf || is_pure(data_, rows))
      return id;

    // Features that are not constant within the node, with their ranges.
    std::vector<std::size_t> features;
    std::vector<std::pair<double, double>> ranges;
    for (std::size_t f = 0; f < data_.n_features; ++f) {
      double lo = data_.at(rows.front(), f), hi = lo;
      for (std::size_t r : rows) {
        lo = std::min(lo, data_.at(r, f));
        hi = std::max(hi, data_.at(r, f));
      }
      if (lo < hi) {
        features.push_back(f);
        ranges.emplace_back(lo, hi);
      }
    }
    if (features.empty()) return id;

    Rng node_rng = rng.split(0x5eed);
    const std::size_t pick = node_rng.below(features.size());
    const auto [lo, hi] = ranges[pick];
    double threshold = lo + node_rng.uniform() * (hi - lo);
    if (!(threshold < hi)) threshold = std::midpoint(lo, hi);

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows)
      (data_.at(r, features[pick]) <= threshold ? left : right).push_back(r);
    if (left.size() < min_leaf || right.size() < min_leaf) return id;
    rows.clear();
    rows.shrink_to_fit();

    const int left_id = grow(std::move(left), depth + 1, rng.split(0));
    const int right_id = grow(std::move(right), depth + 1, rng.split(1));
    CartNode& parent = tree_.node(id);
    parent.feature = static_cast<int>(features[pick]);
    parent.threshold = threshold;
    parent.left = left_id;
    parent.right = right_id;
    return id;
  }

 private:
  const DataView& data_;
  const CartParams& params_;
  CartTree& tree_;
};

}  // namespace

void ForestSpec::validate() const {
  if (n_trees < 1) throw DomainError("a forest needs at least one tree");
  if (min_samples_leaf < 1) throw DomainError("min_samples_leaf must be >= 1");
}

nlohmann::json ForestSpec::to_json() const {
  return {{"kind", kind == ForestKind::breiman ? "breiman" : "completely_random"},
          {"n_trees", n_trees},
          {"max_depth", max_depth},
          {"min_samples_leaf", min_samples_leaf},
          {"mtry", mtry},
          {"bootstrap", bootstrap}};
}

ForestSpec ForestSpec::from_json(const nlohmann::json& j) {
  ForestSpec spec;
  const std::string kind = j.value("kind", std::string("breiman"));
  if (kind == "breiman" || kind == "rf") {
    spec.kind = ForestKind::breiman;
  } else if (kind == "completely_random" || kind == "crf") {
    spec.kind = ForestKind::completely_random;
    spec.bootstrap = false;
  } else {
    throw DataError("unknown forest kind '" + kind + "'");
  }
  spec.n_trees = j.value("n_trees", spec.n_trees);
  spec.max_depth = j.value("max_depth", spec.max_depth);
  spec.min_samples_leaf = j.value("min_samples_leaf", spec.min_samples_leaf);
  spec.mtry = j.value("mtry", spec.mtry);
  spec.bootstrap = j.value("bootstrap", spec.bootstrap);
  spec.validate();
  return spec;
}

std::size_t effective_mtry(const ForestSpec& spec, Task task,
                           std::size_t n_features) {
  if (spec.mtry != 0) return std::min(spec.mtry, n_features);
  if (task == Task::regression) return n_features;
  return static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(n_features))));
}

Forest::Forest(Task task, std::size_t n_classes, std::vector<CartTree> trees)
    : task_(task), n_classes_(n_classes), trees_(std::move(trees)) {
  if (trees_.empty()) throw DomainError("a forest needs at least one tree");
}

void Forest::predict_into(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const CartTree& tree : trees_) {
    const auto payload = tree.predict(x);
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += payload[c];
  }
  const double n = static_cast<double>(trees_.size());
  for (double& v : out) v /= n;
}

std::vector<double> Forest::predict(std::span<const double> x) const {
  std::vector<double> out(output_width());
  predict_into(x, out);
  return out;
}

std::size_t Forest::predict_class(std::span<const double> x) const {
  return argmax(predict(x));
}

double Forest::predict_value(std::span<const double> x) const {
  return predict(x)[0];
}

CartTree fit_random_tree(const DataView& data, std::span<const std::size_t> rows,
                         const CartParams& params, const Rng& rng) {
  if (rows.empty()) throw DataError("cannot fit a tree on an empty dataset");
  CartTree tree(params.task, data.n_features, params.n_classes);
  RandomBuilder builder(data, params, tree);
  builder.grow(std::vector<std::size_t>(rows.begin(), rows.end()), 0, rng);
  return tree;
}

Forest fit_forest(const ForestSpec& spec, const DataView& data, Task task,
                  std::size_t n_classes, const Rng& rng, unsigned jobs) {
  spec.validate();
  if (data.size() == 0) throw DataError("cannot fit a forest on empty data");
  CartParams params;
  params.task = task;
  params.n_classes = n_classes;
  params.max_depth = spec.max_depth;
  params.min_samples_leaf = spec.min_samples_leaf;
  params.mtry = effective_mtry(spec, task, data.n_features);

  const std::size_t n = data.size();
  std::vector<std::optional<CartTree>> trees(spec.n_trees);
  parallel_for(spec.n_trees, jobs, [&](std::size_t t) {
    const Rng tree_rng = rng.split(t);
    std::vector<std::size_t> rows(n);
    if (spec.bootstrap) {
      Rng draw = tree_rng.split(0xb007);
      for (auto& r : rows) r = draw.below(n);
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    trees[t] = spec.kind == ForestKind::breiman
                   ? fit_cart(data, rows, params, tree_rng)
                   : fit_random_tree(data, rows, params, tree_rng);
  });
  std::vector<CartTree> fitted;
  fitted.reserve(trees.size());
  for (auto& t : trees) fitted.push_back(std::move(*t));
  return Forest(task, n_classes, std::move(fitted));
}

Forest fit_forest(const ForestSpec& spec, const DataView& data, Task task,
                  std::size_t n_classes, std::uint64_t seed, unsigned jobs) {
  return fit_forest(spec, data, task, n_classes, Rng(seed), jobs);
}

double score_forest(const Forest& forest, const DataView& data) {
  if (forest.task() == Task::classification) {
    std::vector<std::size_t> predicted(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
      predicted[i] = forest.predict_class(data.row(i));
    return accuracy_score(predicted, data.targets);
  }
  std::vector<double> predicted(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    predicted[i] = forest.predict_value(data.row(i));
  return r2_score(predicted, data.targets);
}

}  // namespace treenet
