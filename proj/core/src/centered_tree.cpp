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

#include "treenet/centered_tree.hpp"

#include <cmath>
#include <numeric>

#include "treenet/error.hpp"

namespace treenet {

std::size_t leaf_index_unchecked(int depth, std::size_t dim, const double* x) {
  std::size_t leaf = 0;
  for (int t = 0; t < depth; ++t) {
    const std::size_t axis = static_cast<std::size_t>(t) % dim;
    const int level = t / static_cast<int>(dim);
    const auto scaled = static_cast<std::uint64_t>(
        x[axis] * static_cast<double>(std::uint64_t{2} << level));
    leaf = (leaf << 1) | (scaled & 1u);
  }
  return leaf;
}

std::size_t leaf_index(int depth, std::size_t dim, std::span<const double> x) {
  if (depth < 0) throw DomainError("depth must be non-negative");
  check_unit_cube(x, dim);
  return leaf_index_unchecked(depth, dim, x.data());
}

int cuts_on_axis(int depth, std::size_t dim, std::size_t axis) {
  const int d = static_cast<int>(dim);
  const int a = static_cast<int>(axis);
  return depth / d + (a < depth % d ? 1 : 0);
}

CenteredTree::CenteredTree(int depth, std::size_t dim)
    : depth_(depth), dim_(dim) {
  if (depth < 0) throw DomainError("depth must be non-negative");
  if (depth > kMaxCenteredDepth) throw DomainError("centered tree too deep");
  if (dim == 0) throw DomainError("dimension must be positive");
  counts_.assign(std::size_t{1} << depth, 0);
  sums_.assign(std::size_t{1} << depth, 0.0);
}

CenteredTree CenteredTree::fit(int depth, std::size_t dim,
                               const SampleSet& data) {
  if (data.dim != dim)
    throw DataError("training data has dimension " + std::to_string(data.dim) +
                    ", tree expects " + std::to_string(dim));
  CenteredTree tree(depth, dim);
  for (std::size_t i = 0; i < data.size(); ++i) tree.add(data.point(i), data.y[i]);
  return tree;
}

void CenteredTree::add(std::span<const double> x, double y) {
  const std::size_t leaf = leaf_of(x);
  ++counts_[leaf];
  sums_[leaf] += y;
}

void CenteredTree::merge(const CenteredTree& other) {
  if (other.depth_ != depth_ || other.dim_ != dim_)
    throw DataError("cannot merge centered trees of different shape");
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += other.counts_[i];
    sums_[i] += other.sums_[i];
  }
}

std::uint64_t CenteredTree::total_count() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

nlohmann::json CenteredTree::to_json() const {
  return {{"k", depth_}, {"d", dim_}, {"counts", counts_}, {"sums", sums_}};
}

CenteredTree CenteredTree::from_json(const nlohmann::json& j) {
  CenteredTree tree(j.at("k").get<int>(), j.at("d").get<std::size_t>());
  auto counts = j.at("counts").get<std::vector<std::uint64_t>>();
  auto sums = j.at("sums").get<std::vector<double>>();
  if (counts.size() != tree.leaf_count() || sums.size() != tree.leaf_count())
    throw DataError("centered tree JSON has wrong leaf count");
  tree.counts_ = std::move(counts);
  tree.sums_ = std::move(sums);
  return tree;
}

}  // namespace treenet
