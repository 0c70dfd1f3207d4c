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

#ifndef TREENET_CENTERED_TREE_HPP_
#define TREENET_CENTERED_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "treenet/chessboard.hpp"

namespace treenet {

inline constexpr int kMaxCenteredDepth = 24;

/// Leaf of the cycling centered partition of depth `depth`.
///
/// Cut t (t = 1..depth) halves the current cell at its center along
/// coordinate ((t - 1) mod dim) + 1. The leaf id collects the cut outcomes
/// most significant first, so the depth-k1 ancestor of a depth-k2 leaf is
/// `leaf >> (k2 - k1)`. Throws DomainError outside [0,1)^dim.
std::size_t leaf_index(int depth, std::size_t dim, std::span<const double> x);

/// Same as leaf_index without the domain check.
std::size_t leaf_index_unchecked(int depth, std::size_t dim, const double* x);

/// Number of cuts the depth-`depth` cycling partition makes along axis `axis`
/// (0-based).
int cuts_on_axis(int depth, std::size_t dim, std::size_t axis);

/// Data-independent dyadic tree with per-leaf label counts and sums.
class CenteredTree {
 public:
  CenteredTree(int depth, std::size_t dim);

  static CenteredTree fit(int depth, std::size_t dim, const SampleSet& data);

  void add(std::span<const double> x, double y);
  /// Adds another tree's statistics (same depth and dimension).
  void merge(const CenteredTree& other);

  int depth() const { return depth_; }
  std::size_t dim() const { return dim_; }
  std::size_t leaf_count() const { return counts_.size(); }

  std::size_t leaf_of(std::span<const double> x) const {
    return leaf_index(depth_, dim_, x);
  }
  std::uint64_t count(std::size_t leaf) const { return counts_[leaf]; }
  double sum(std::size_t leaf) const { return sums_[leaf]; }
  /// Empirical label mean, 0 for an empty leaf.
  double mean(std::size_t leaf) const {
    return counts_[leaf] == 0 ? 0.0
                              : sums_[leaf] / static_cast<double>(counts_[leaf]);
  }
  std::uint64_t total_count() const;

  double predict(std::span<const double> x) const { return mean(leaf_of(x)); }

  const std::vector<std::uint64_t>& counts() const { return counts_; }
  const std::vector<double>& sums() const { return sums_; }

  nlohmann::json to_json() const;
  static CenteredTree from_json(const nlohmann::json& j);

 private:
  int depth_;
  std::size_t dim_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> sums_;
};

}  // namespace treenet

#endif  // TREENET_CENTERED_TREE_HPP_
