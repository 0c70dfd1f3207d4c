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

#include <cmath>

#include <gtest/gtest.h>

#include "treenet/bounds.hpp"
#include "treenet/error.hpp"

namespace treenet {
namespace {

const std::uint64_t kNs[] = {1, 10, 100, 1000, 10000};
const double kPs[] = {0.6, 0.8, 0.99};

TEST(Regime, NamesRoundTrip) {
  for (Regime r : {Regime::single_tree_small_k, Regime::shallow_small_k,
                   Regime::single_tree_large_k, Regime::shallow_large_k,
                   Regime::random_chessboard, Regime::uniform_labels})
    EXPECT_EQ(parse_regime(regime_name(r)), r);
  EXPECT_THROW(parse_regime("medium_k"), DomainError);
}

TEST(EmptyCellMass, Values) {
  EXPECT_EQ(empty_cell_mass(3, 0), 1.0);
  EXPECT_EQ(empty_cell_mass(0, 5), 0.0);
  EXPECT_NEAR(empty_cell_mass(2, 100), std::pow(0.75, 100), 1e-25);
  // Stays finite and positive far into the underflow range of the naive power.
  EXPECT_GT(empty_cell_mass(40, 1000000), 0.99);
}

TEST(SingleTreeSmallK, ClosedFormValues) {
  const auto r = bound_single_tree_small_k(2, 100, 0.8);
  EXPECT_NEAR(r.upper, 0.109802, 5e-7);
  EXPECT_NEAR(r.lower, 0.099901, 5e-7);
  EXPECT_NEAR(r.upper, 0.09 + 4.0 / 202 + std::pow(0.75, 100) / 4, 1e-15);
  EXPECT_NEAR(r.constants.at("bias"), 0.09, 1e-16);
}

TEST(SingleTreeSmallK, LimitsInN) {
  const auto r = bound_single_tree_small_k(3, 1u << 30, 0.8);
  EXPECT_NEAR(r.lower, 0.09, 1e-8);
  EXPECT_NEAR(r.upper, 0.09, 1e-8);
  // Near p = 1/2 the bias vanishes and the cell-count terms are all that is left.
  const auto flat = bound_single_tree_small_k(3, 99, 0.5 + 1e-9);
  EXPECT_NEAR(flat.upper, 8.0 / 200 + flat.constants.at("empty_cell_mass") / 4, 1e-15);
  EXPECT_THROW(bound_single_tree_small_k(3, 99, 0.5), DomainError);
}

TEST(ShallowSmallK, LowerIsBiasAndUpperMagnitude) {
  for (int k = 1; k <= 8; ++k)
    for (std::uint64_t n : kNs) EXPECT_NEAR(bound_shallow_small_k(k, n, 0.8).lower, 0.09, 1e-16);
  const auto r = bound_shallow_small_k(2, 10000, 0.8);
  const double leading = 16 * 0.3 / std::sqrt(M_PI * 1e4);
  EXPECT_NEAR(leading, 0.0271, 1e-4);
  EXPECT_GT(r.upper, 0.09 + leading);
  EXPECT_LT(r.upper, 0.09 + leading + 0.01);
  EXPECT_TRUE(r.constants.count("epsilon1") && r.constants.count("epsilon2"));
}

TEST(ShallowSmallK, EpsilonDecaysLikeInverseRootCells) {
  double previous = INFINITY;
  for (int k = 2; k <= 20; ++k) {
    const double scaled = epsilon_shallow(k, 0.8) * std::exp2(k / 2.0);
    EXPECT_LT(scaled, previous) << "k=" << k;
    EXPECT_LT(scaled, 2.0);
    previous = scaled;
  }
  EXPECT_LT(epsilon_shallow(20, 0.8), 1e-3);
}

TEST(SingleTreeLargeK, ClosedFormValues) {
  const auto r = bound_single_tree_large_k(4, 1000, 0.8);
  EXPECT_NEAR(r.upper, 0.002557, 5e-7);
  EXPECT_NEAR(r.upper, 16 * 0.16 / 1001 + 0.68 * std::pow(15.0 / 16, 1000) / 2, 1e-15);
  // With one sample the bound stays below the all-empty risk for shallow trees
  // only; from k=3 on the variance term alone exceeds it.
  for (int k : {1, 2}) EXPECT_LT(bound_single_tree_large_k(k, 1, 0.8).upper, 0.68);
  EXPECT_GT(bound_single_tree_large_k(3, 1, 0.8).upper, 0.68);
}

TEST(ShallowLargeK, RhoAndUpper) {
  EXPECT_NEAR(rho_kp(4, 0.8), 0.0625 * std::min(0.2, 1 - std::exp(-0.18)), 1e-16);
  EXPECT_NEAR(rho_kp(4, 0.8), 0.010296, 5e-7);
  const auto r = bound_shallow_large_k(4, 4, 8, 4096, 0.8);
  EXPECT_NEAR(r.upper, 2 * 0.16 / 4097, 1e-12);
  EXPECT_NEAR(r.upper, 7.81e-5, 1e-7);
  EXPECT_TRUE(r.lower_valid);
  // The single tree at the same point pays the full cell count.
  EXPECT_NEAR(bound_single_tree_large_k(4, 4096, 0.8).lower, 8 * 0.16 / 4097, 1e-12);
  EXPECT_FALSE(bound_shallow_large_k(4, 4, 8, 100, 0.8).lower_valid);
  EXPECT_TRUE(bound_shallow_large_k(4, 4, 8, 160, 0.8).lower_valid);
  EXPECT_FALSE(bound_shallow_large_k(4, 4, 8, 159, 0.8).lower_valid);
  EXPECT_THROW(bound_shallow_large_k(3, 4, 8, 100, 0.8), DomainError);
  EXPECT_THROW(bound_shallow_large_k(4, 4, 17, 100, 0.8), DomainError);
}

TEST(RandomChessboard, HalfBlackValues) {
  const auto b = bound_random_chessboard(2, 4, 8, 1000, 0.8);
  EXPECT_NEAR(b.shallow_infinite.lower, 0.0225, 1e-15);
  EXPECT_NEAR(b.shallow_infinite.upper, 0.41, 1e-15);
  EXPECT_NEAR(b.single_tree.constants.at("tree_bias"), 0.09, 1e-15);
  EXPECT_EQ(bound_random_chessboard(2, 4, 16, 1000, 0.8).shallow_infinite.lower, 0.0);
  EXPECT_THROW(bound_random_chessboard(4, 4, 8, 1000, 0.8), DomainError);
  EXPECT_THROW(bound_random_chessboard(2, 4, 0, 1000, 0.8), DomainError);
}

TEST(UniformLabels, DepthZeroIsExact) {
  const auto r = bound_uniform_labels(0, 10, 0.5);
  EXPECT_DOUBLE_EQ(r.lower, 0.025);
  EXPECT_DOUBLE_EQ(r.upper, 0.025);
}

TEST(Lemma1Bound, Values) {
  EXPECT_NEAR(lemma1_lower_bound(4), 7.0 / 720 + 0.375 / 65536, 1e-16);
  EXPECT_NEAR(lemma1_lower_bound(4), 0.0097279, 1e-7);
  EXPECT_LT(lemma1_lower_bound(2), 0.0);
  EXPECT_THROW(lemma1_lower_bound(0), DomainError);
}

TEST(Validation, RejectsOutOfRange) {
  EXPECT_THROW(bound_single_tree_small_k(0, 10, 0.8), DomainError);
  EXPECT_THROW(bound_single_tree_small_k(2, 0, 0.8), DomainError);
  EXPECT_THROW(bound_single_tree_small_k(2, 10, 0.4), DomainError);
  EXPECT_THROW(bound_single_tree_small_k(61, 10, 0.8), DomainError);
}

TEST(Sandwich, LowerBelowUpperOnGrid) {
  for (int k = 1; k <= 10; ++k)
    for (std::uint64_t n : kNs)
      for (double p : kPs) {
        SCOPED_TRACE(::testing::Message() << "k=" << k << " n=" << n << " p=" << p);
        for (const auto& r : {bound_single_tree_small_k(k, n, p), bound_shallow_small_k(k, n, p),
                              bound_single_tree_large_k(k, n, p), bound_uniform_labels(k, n, p)})
          EXPECT_LE(r.lower, r.upper) << regime_name(r.regime);
        for (int k_star = k + 1; k_star <= k + 3; ++k_star)
          for (std::uint64_t black : {std::uint64_t{1}, std::uint64_t{1} << (k_star - 1),
                                      std::uint64_t{1} << k_star}) {
            const auto b = bound_random_chessboard(k, k_star, black, n, p);
            EXPECT_LE(b.single_tree.lower, b.single_tree.upper);
            EXPECT_LE(b.shallow_infinite.lower, b.shallow_infinite.upper);
          }
      }
}

TEST(Sandwich, SingleTreeLargeKDenseGrid) {
  for (int k = 1; k <= 10; ++k)
    for (std::uint64_t n = 1; n <= 10000; n += (n < 100 ? 1 : 37))
      for (double p : kPs) {
        const auto r = bound_single_tree_large_k(k, n, p);
        ASSERT_LE(r.lower, r.upper) << "k=" << k << " n=" << n << " p=" << p;
      }
}

// The shallow large-k lower bound carries 2p(1-p)/n while the upper bound
// carries 2p(1-p)/(n+1), so once the exponentially small terms vanish the
// lower bound overshoots by 2p(1-p)/(n(n+1)). Nothing larger is allowed.
TEST(Sandwich, ShallowLargeKCrossesOnlyByVarianceSlack) {
  int crossings = 0;
  for (int k = 1; k <= 8; ++k)
    for (int k_star = 0; k_star <= k; ++k_star)
      for (std::uint64_t n : kNs)
        for (double p : kPs) {
          const std::uint64_t black = std::uint64_t{1} << (k_star > 0 ? k_star - 1 : 0);
          const auto r = bound_shallow_large_k(k, k_star, black, n, p);
          const double slack = 2 * p * (1 - p) / (static_cast<double>(n) * (n + 1.0));
          EXPECT_LE(r.lower, r.upper + slack * (1 + 1e-9))
              << "k=" << k << " k*=" << k_star << " n=" << n << " p=" << p;
          crossings += r.lower > r.upper;
        }
  EXPECT_GT(crossings, 0);
}

}  // namespace
}  // namespace treenet
