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

#include <gtest/gtest.h>

#include "generators.hpp"
#include "treenet/binomial.hpp"
#include "treenet/bounds.hpp"
#include "treenet/error.hpp"
#include "treenet/risk.hpp"

namespace treenet {
namespace {

using testing::for_all;

const CellField kBoard = ChessboardSpec::balanced(4, 2, 0.8).field();

bool within(const RiskEstimate& e, double target, double sigmas = 3.0) {
  return std::abs(e.mean - target) <= sigmas * e.standard_error;
}

TEST(ExactRisk, PerfectModelHasZeroRisk) {
  const auto spec = ChessboardSpec::balanced(4, 2, 1.0);
  const auto tree = CenteredTree::fit(4, 2, sample(spec, 5000, 1));
  ASSERT_EQ(std::count(tree.counts().begin(), tree.counts().end(), 0u), 0);
  EXPECT_EQ(exact_conditional_risk(tree, spec.field()), 0.0);
}

TEST(ExactRisk, ConstantHalfModel) {
  SampleSet s(2);
  s.push_back(std::vector{0.2, 0.2}, 1.0);
  s.push_back(std::vector{0.7, 0.2}, 0.0);
  const auto tree = CenteredTree::fit(0, 2, s);
  EXPECT_NEAR(exact_conditional_risk(tree, kBoard), 0.09, 1e-15);
}

TEST(ExactRisk, EmptyModel) {
  EXPECT_NEAR(exact_conditional_risk(CenteredTree(3, 2), kBoard), 0.34, 1e-15);
  const auto net = ShallowTreeNetwork::fit(3, 2, {SplitDirective::new_feature()}, SampleSet(2));
  EXPECT_NEAR(exact_conditional_risk(net, kBoard), 0.34, 1e-15);
}

TEST(ExactRisk, MatchesNaiveIntegralProperty) {
  for_all(5, [](Rng& rng, std::size_t c) {
    const ChessboardSpec spec = testing::gen_board(rng, 6);
    const std::size_t d = static_cast<std::size_t>(spec.dim());
    const auto data = sample(spec, 50 + rng.below(500), rng.next_u64());
    const int k = testing::gen_int(rng, 0, 7);
    const auto tree = CenteredTree::fit(k, d, data);
    const auto net = ShallowTreeNetwork::fit(
        k, d, {SplitDirective::new_feature(), SplitDirective::raw(1)}, data);
    const double exact_tree = exact_conditional_risk(tree, spec.field());
    const double exact_net = exact_conditional_risk(net, spec.field());
    const int n = 1000000;
    double sum_t = 0, sq_t = 0, sum_n = 0, sq_n = 0;
    Rng points(99, c);
    std::vector<double> x(d);
    for (int i = 0; i < n; ++i) {
      for (auto& v : x) v = points.uniform();
      const double r = spec.regression_value(x);
      const double et = std::pow(tree.predict(x) - r, 2);
      const double en = std::pow(net.predict(x) - r, 2);
      sum_t += et;
      sq_t += et * et;
      sum_n += en;
      sq_n += en * en;
    }
    const auto check = [n](double sum, double sq, double exact) {
      const double mean = sum / n;
      const double se = std::sqrt(std::max(0.0, sq / n - mean * mean) / n);
      EXPECT_LE(std::abs(mean - exact), 3 * se + 1e-12) << "mean " << mean << " exact " << exact;
    };
    check(sum_t, sq_t, exact_tree);
    check(sum_n, sq_n, exact_net);
  });
}

TEST(RiskLattice, CoversCubeUniformly) {
  const RiskLattice lattice(4, 2, ModelFamily::shallow(6, parse_schedule("raw:1,raw:1,raw:1")));
  // Each axis takes the finest of the board, encoder and schedule cuts: 3 and 3.
  EXPECT_EQ(lattice.size(), std::size_t{1} << (3 + 3));
  for (std::size_t c = 0; c < lattice.size(); ++c)
    EXPECT_EQ(lattice.field_cell(c), kBoard.cell_index(std::span(lattice.center(c), 2)));
}

TEST(McRisk, NoDataGivesEmptyModelRisk) {
  const auto e = mc_risk(ModelFamily::single_tree(2), kBoard, 0, 1, 5);
  EXPECT_NEAR(e.mean, 0.34, 1e-15);
  EXPECT_EQ(e.repetitions, 1u);
}

TEST(McRisk, UniformLabelsDepthZero) {
  const auto field = DiscretizedSpec(0, 2, {0.5}).field();
  const auto e = mc_risk(ModelFamily::single_tree(0), field, 10, 100000, 3);
  EXPECT_TRUE(within(e, 0.025)) << e.mean << " +- " << e.standard_error;
}

TEST(McRisk, SingleTreeMatchesBinomialOracle) {
  // At k = k* every leaf is one cell, so the risk is the per-leaf variance of a
  // Bin(n, 2^-k) mean plus the squared regression value on empty leaves.
  for (std::size_t n : {16u, 64u, 256u}) {
    const auto e = mc_risk(ModelFamily::single_tree(4), kBoard, n, 20000, 11 + n);
    const double exact = 0.16 * expected_inverse_positive(n, 1.0 / 16) +
                         0.34 * empty_cell_mass(4, n);
    EXPECT_TRUE(within(e, exact, 4.0)) << "n=" << n << " mc " << e.mean << " exact " << exact;
  }
}

TEST(McRisk, SmallDepthWithinBounds) {
  const auto e = mc_risk(ModelFamily::single_tree(2), kBoard, 100, 5000, 2);
  const auto b = bound_single_tree_small_k(2, 100, 0.8);
  EXPECT_GE(e.mean, b.lower - 3 * e.standard_error);
  EXPECT_LE(e.mean, b.upper + 3 * e.standard_error);
}

TEST(McRisk, DeterministicAcrossJobs) {
  const auto family = ModelFamily::shallow(4, {SplitDirective::new_feature()});
  const auto a = mc_risk(family, kBoard, 64, 300, 8, 1);
  const auto b = mc_risk(family, kBoard, 64, 300, 8, 3);
  EXPECT_EQ(a.per_repetition, b.per_repetition);
  EXPECT_EQ(a.seeds_digest, b.seeds_digest);
  EXPECT_NE(a.seeds_digest, mc_risk(family, kBoard, 64, 300, 9, 1).seeds_digest);
  const RandomChessboardSpec random(4, 2, 0.8, 8);
  EXPECT_EQ(mc_risk(family, random, 64, 50, 1, 1).per_repetition,
            mc_risk(family, random, 64, 50, 1, 2).per_repetition);
  EXPECT_THROW(mc_risk(family, kBoard, 64, 0, 8), DomainError);
}

TEST(InfiniteSample, BalancedBoard) {
  EXPECT_NEAR(infinite_sample_risk(kBoard, ModelFamily::single_tree(2)), 0.09, 1e-15);
  EXPECT_EQ(infinite_sample_risk(kBoard, ModelFamily::single_tree(4)), 0.0);
  EXPECT_EQ(infinite_sample_risk(kBoard, ModelFamily::shallow(5, {SplitDirective::new_feature()})), 0.0);
}

TEST(ScheduleSearch, NewFeatureWinsAtFullDepth) {
  for (int k_star : {4, 6}) {
    const auto field = ChessboardSpec::balanced(k_star, 2, 0.8).field();
    const auto s = lemma2_schedule_search(field, k_star, 1);
    EXPECT_EQ(s.best, Schedule{SplitDirective::new_feature()});
    EXPECT_EQ(s.best_risk, 0.0);
  }
}

TEST(ScheduleSearch, ZeroRiskSchedulesAreRawCompletions) {
  const auto s = lemma2_schedule_search(kBoard, 2, 4);
  EXPECT_EQ(s.table.size(), schedule_count(2, 4));
  EXPECT_EQ(s.best_risk, 0.0);
  int zero = 0;
  for (const auto& row : s.table) {
    const bool complete = row.schedule.size() == 4 &&
                          std::all_of(row.schedule.begin(), row.schedule.end(),
                                      [](const SplitDirective& d) { return d.is_raw(); }) &&
                          raw_cuts_on_axis(row.schedule, 0) == 2;
    EXPECT_EQ(row.risk == 0.0, complete) << format_schedule(row.schedule);
    zero += row.risk == 0.0;
  }
  EXPECT_EQ(zero, 6);
}

TEST(ScheduleSearch, EmptyScheduleIsSingleTree) {
  const auto s = lemma2_schedule_search(kBoard, 2, 0);
  ASSERT_EQ(s.table.size(), 1u);
  EXPECT_TRUE(s.best.empty());
  EXPECT_EQ(s.best_risk, infinite_sample_risk(kBoard, ModelFamily::single_tree(2)));
}

TEST(ScheduleSearch, BudgetAndCount) {
  EXPECT_EQ(schedule_count(2, 0), 1u);
  EXPECT_EQ(schedule_count(2, 2), 1u + 3 + 9);
  EXPECT_THROW(lemma2_schedule_search(kBoard, 2, 4, 100), BudgetExceeded);
}

TEST(Lemma1Check, SingleTreeIsExactAndMeanAboveBound) {
  const auto two = lemma1_check(2, 500, 1);
  EXPECT_EQ(two.max_single_tree_risk, 0.0);
  EXPECT_TRUE(two.holds);
  const auto four = lemma1_check(4, 2000, 1);
  EXPECT_EQ(four.max_single_tree_risk, 0.0);
  EXPECT_NEAR(four.bound, 0.0097279, 1e-7);
  EXPECT_GE(four.mean_shallow_risk, four.bound);
}

}  // namespace
}  // namespace treenet
