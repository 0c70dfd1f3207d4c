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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "treenet/centered_tree.hpp"
#include "treenet/chessboard.hpp"
#include "treenet/error.hpp"

namespace treenet {
namespace {

using testing::for_all;

TEST(LeafIndex, HandTraced) {
  EXPECT_EQ(leaf_index(0, 2, std::vector{0.9, 0.9}), 0u);
  EXPECT_EQ(leaf_index(2, 2, std::vector{0.3, 0.6}), 1u);
  EXPECT_EQ(leaf_index(3, 2, std::vector{0.3, 0.6}), 0b011u);
  EXPECT_EQ(leaf_index(1, 3, std::vector{0.5, 0.0, 0.0}), 1u);
}

TEST(LeafIndex, CutsOnAxisCycle) {
  EXPECT_EQ(cuts_on_axis(5, 2, 0), 3);
  EXPECT_EQ(cuts_on_axis(5, 2, 1), 2);
  EXPECT_EQ(cuts_on_axis(2, 3, 2), 0);
  EXPECT_EQ(cuts_on_axis(0, 1, 0), 0);
}

TEST(LeafIndex, RejectsBadInput) {
  EXPECT_THROW(leaf_index(2, 2, std::vector{1.0, 0.2}), DomainError);
  EXPECT_THROW(leaf_index(2, 2, std::vector{0.2}), DomainError);
  EXPECT_THROW(CenteredTree(-1, 2), DomainError);
  EXPECT_THROW(CenteredTree(kMaxCenteredDepth + 1, 2), DomainError);
  EXPECT_THROW(CenteredTree(2, 0), DomainError);
}

// At k = k* the leaves of the cycling tree are exactly the chessboard cells.
TEST(LeafIndex, BijectionWithCellsAtFullDepth) {
  for (int k_star : {2, 4, 6}) {
    const auto spec = ChessboardSpec::balanced(k_star, 2, 0.8);
    const std::size_t m = std::size_t{1} << (k_star / 2);
    std::set<std::size_t> leaves;
    std::vector<std::size_t> cell_of_leaf(std::size_t{1} << k_star, 0);
    for (std::size_t i2 = 0; i2 < m; ++i2)
      for (std::size_t i1 = 0; i1 < m; ++i1) {
        const std::vector<double> x{(i1 + 0.5) / m, (i2 + 0.5) / m};
        const std::size_t leaf = leaf_index(k_star, 2, x);
        EXPECT_TRUE(leaves.insert(leaf).second) << "leaf reused at k*=" << k_star;
        cell_of_leaf[leaf] = spec.cell_index(x);
      }
    EXPECT_EQ(leaves.size(), std::size_t{1} << k_star);
    std::sort(cell_of_leaf.begin(), cell_of_leaf.end());
    for (std::size_t c = 0; c < cell_of_leaf.size(); ++c) EXPECT_EQ(cell_of_leaf[c], c);
  }
}

TEST(LeafIndex, RefinementProperty) {
  // The depth-(k+1) leaf always has the depth-k leaf as its prefix.
  for_all(200, [](Rng& rng, std::size_t) {
    const int d = testing::gen_int(rng, 1, 3);
    const int k = testing::gen_int(rng, 0, 12);
    const auto x = testing::gen_point(rng, static_cast<std::size_t>(d));
    EXPECT_EQ(leaf_index(k + 1, d, x) >> 1, leaf_index(k, d, x));
  });
}

TEST(CenteredTree, EmptyDataPredictsZero) {
  const auto tree = CenteredTree::fit(3, 2, SampleSet(2));
  EXPECT_EQ(tree.total_count(), 0u);
  for (std::size_t l = 0; l < tree.leaf_count(); ++l) EXPECT_EQ(tree.mean(l), 0.0);
  EXPECT_EQ(tree.predict(std::vector{0.4, 0.4}), 0.0);
}

TEST(CenteredTree, OneSample) {
  SampleSet s(2);
  s.push_back(std::vector{0.3, 0.6}, 1.0);
  const auto tree = CenteredTree::fit(2, 2, s);
  for (std::size_t l = 0; l < 4; ++l) {
    EXPECT_EQ(tree.count(l), l == 1 ? 1u : 0u);
    EXPECT_EQ(tree.sum(l), l == 1 ? 1.0 : 0.0);
  }
}

TEST(CenteredTree, LeafMeanArithmetic) {
  SampleSet s(1);
  s.push_back(std::vector{0.1}, 1.0);
  s.push_back(std::vector{0.2}, 1.0);
  s.push_back(std::vector{0.3}, 0.0);
  const auto tree = CenteredTree::fit(1, 1, s);
  EXPECT_DOUBLE_EQ(tree.predict(std::vector{0.25}), 2.0 / 3.0);
  EXPECT_EQ(tree.predict(std::vector{0.75}), 0.0);
}

TEST(CenteredTree, DepthZeroIsGlobalMean) {
  for_all(20, [](Rng& rng, std::size_t) {
    const auto s = testing::gen_samples(rng, 2, 1 + rng.below(50), rng.uniform());
    const auto tree = CenteredTree::fit(0, 2, s);
    const double mean = std::accumulate(s.y.begin(), s.y.end(), 0.0) / s.size();
    EXPECT_NEAR(tree.predict(testing::gen_point(rng, 2)), mean, 1e-12);
  });
}

TEST(CenteredTree, BalancedBoardLeafMeans) {
  const auto spec = ChessboardSpec::balanced(4, 2, 0.8);
  const auto tree = CenteredTree::fit(4, 2, sample(spec, 100000, 5));
  double black = 0, white = 0;
  const std::size_t m = 4;
  for (std::size_t i2 = 0; i2 < m; ++i2)
    for (std::size_t i1 = 0; i1 < m; ++i1) {
      const std::vector<double> x{(i1 + 0.5) / m, (i2 + 0.5) / m};
      (spec.regression_value(x) == 0.8 ? black : white) += tree.predict(x);
    }
  EXPECT_NEAR(black / 8, 0.8, 0.01);
  EXPECT_NEAR(white / 8, 0.2, 0.01);
}

TEST(CenteredTree, PermutationInvariance) {
  for_all(20, [](Rng& rng, std::size_t) {
    const std::size_t d = static_cast<std::size_t>(testing::gen_int(rng, 1, 3));
    const int k = testing::gen_int(rng, 0, 8);
    const auto s = testing::gen_samples(rng, d, 200);
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    SampleSet shuffled(d);
    for (std::size_t i : order) shuffled.push_back(s.point(i), s.y[i]);
    const auto a = CenteredTree::fit(k, d, s);
    const auto b = CenteredTree::fit(k, d, shuffled);
    EXPECT_EQ(a.counts(), b.counts());
    // Sums of 0/1 labels are exact regardless of order.
    EXPECT_EQ(a.sums(), b.sums());
  });
}

TEST(CenteredTree, MassConservationAndMerge) {
  for_all(20, [](Rng& rng, std::size_t) {
    const auto s = testing::gen_samples(rng, 2, 300);
    const int k = testing::gen_int(rng, 0, 10);
    const auto full = CenteredTree::fit(k, 2, s);
    EXPECT_EQ(full.total_count(), s.size());
    CenteredTree left(k, 2), right(k, 2);
    for (std::size_t i = 0; i < s.size(); ++i)
      (i % 2 ? left : right).add(s.point(i), s.y[i]);
    left.merge(right);
    EXPECT_EQ(left.counts(), full.counts());
  });
  EXPECT_THROW(CenteredTree(2, 2).merge(CenteredTree(3, 2)), DataError);
}

TEST(CenteredTree, JsonRoundTrip) {
  Rng rng(4);
  const auto tree = CenteredTree::fit(3, 2, testing::gen_samples(rng, 2, 40));
  const auto back = CenteredTree::from_json(tree.to_json());
  EXPECT_EQ(back.depth(), 3);
  EXPECT_EQ(back.counts(), tree.counts());
  EXPECT_EQ(back.sums(), tree.sums());
}

}  // namespace
}  // namespace treenet
