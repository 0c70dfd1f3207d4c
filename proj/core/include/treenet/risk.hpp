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

#ifndef TREENET_RISK_HPP_
#define TREENET_RISK_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "treenet/centered_tree.hpp"
#include "treenet/chessboard.hpp"
#include "treenet/shallow_network.hpp"

namespace treenet {

/// Estimator family evaluated by the risk routines: a single centered tree
/// of depth k, or a centered encoder of depth k followed by a second-layer
/// schedule.
struct ModelFamily {
  enum class Kind { single_tree, shallow };
  Kind kind = Kind::single_tree;
  int k = 0;
  Schedule schedule;
  ShallowOptions options;

  static ModelFamily single_tree(int k) { return {Kind::single_tree, k, {}, {}}; }
  static ModelFamily shallow(int k, Schedule schedule, ShallowOptions options = {}) {
    return {Kind::shallow, k, std::move(schedule), options};
  }
  std::string name() const;
};

struct RiskEstimate {
  double mean = 0.0;
  /// Sample standard deviation over repetitions divided by sqrt(repetitions);
  /// 0 for a single repetition.
  double standard_error = 0.0;
  std::size_t repetitions = 0;
  /// Digest of the (seed, stream) pairs consumed by the repetitions.
  std::uint64_t seeds_digest = 0;
  std::vector<double> per_repetition;
};

/// Common dyadic refinement of a cell field and a model family's leaves.
///
/// Every fine cell lies inside exactly one field cell, one encoder leaf and
/// one second-layer raw cell, so evaluating predictions and the regression
/// function at fine-cell centers integrates the squared error exactly.
class RiskLattice {
 public:
  RiskLattice(int k_star, int dim, const ModelFamily& family);

  int dim() const { return dim_; }
  std::size_t size() const { return field_cell_.size(); }
  const double* center(std::size_t c) const { return centers_.data() + c * dim_; }
  std::size_t field_cell(std::size_t c) const { return field_cell_[c]; }
  std::size_t encoder_leaf(std::size_t c) const { return encoder_leaf_[c]; }

  double risk(const CenteredTree& tree, const CellField& field) const;
  double risk(const ShallowTreeNetwork& network, const CellField& field) const;

 private:
  int dim_;
  int k_;
  std::vector<double> centers_;
  std::vector<std::size_t> field_cell_;
  std::vector<std::size_t> encoder_leaf_;
};

/// Integrated squared distance between the fitted model and the field's
/// regression function over [0,1)^d. Throws DomainError on dimension
/// mismatch.
double exact_conditional_risk(const CenteredTree& tree, const CellField& field);
double exact_conditional_risk(const ShallowTreeNetwork& network,
                              const CellField& field);

/// Repetition r draws a fresh sample from stream (seed, r), fits the model
/// and integrates its risk. Results do not depend on `jobs`.
RiskEstimate mc_risk(const ModelFamily& family, const CellField& field,
                     std::size_t n, std::size_t repetitions, std::uint64_t seed,
                     unsigned jobs = 1);
/// Each repetition first draws the coloring, then the sample, from its
/// stream.
RiskEstimate mc_risk(const ModelFamily& family, const RandomChessboardSpec& spec,
                     std::size_t n, std::size_t repetitions, std::uint64_t seed,
                     unsigned jobs = 1);

/// Risk when every leaf and group mean is replaced by its population value.
double infinite_sample_risk(const CellField& field, const ModelFamily& family);

struct ScheduleRisk {
  Schedule schedule;
  double risk = 0.0;
};

struct ScheduleSearch {
  Schedule best;
  double best_risk = 0.0;
  std::vector<ScheduleRisk> table;
};

/// Number of schedules of length 0..max_kprime over d raw axes plus the new
/// feature.
std::uint64_t schedule_count(int dim, int max_kprime);

/// Exhaustive infinite-sample risk over all schedules up to max_kprime
/// levels, by length then lexicographically (new feature before raw axes).
/// The table starts with the empty schedule (the single tree); the argmin
/// runs over schedules with at least one level unless max_kprime is 0, with
/// ties going to the first schedule in table order.
/// Throws BudgetExceeded when the count exceeds `budget`.
ScheduleSearch lemma2_schedule_search(const CellField& field, int k,
                                      int max_kprime,
                                      std::uint64_t budget = 1'000'000);

struct Lemma1Check {
  int k_star = 0;
  int dim = 0;
  std::size_t draws = 0;
  double mean_shallow_risk = 0.0;
  double standard_error = 0.0;
  double bound = 0.0;
  double max_single_tree_risk = 0.0;
  bool holds = false;
};

/// Draws `draws` fields with i.i.d. uniform cell probabilities (draw r on
/// stream (seed, r)) and averages the infinite-sample risk of the depth-k*
/// encoder followed by one cut on the leaf mean.
Lemma1Check lemma1_check(int k_star, std::size_t draws, std::uint64_t seed,
                         int dim = 2, unsigned jobs = 1);

}  // namespace treenet

#endif  // TREENET_RISK_HPP_
