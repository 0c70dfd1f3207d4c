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

#ifndef TREENET_SHALLOW_NETWORK_HPP_
#define TREENET_SHALLOW_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "treenet/cart.hpp"
#include "treenet/centered_tree.hpp"
#include "treenet/chessboard.hpp"

namespace treenet {

/// One level of the second-layer centered tree: either a center cut along a
/// raw coordinate (1-based, as in the CLI) or a center cut along the
/// encoder's leaf mean. The first cut on the leaf mean is at 1/2; further
/// cuts on it halve the current interval like any centered cut.
struct SplitDirective {
  enum class Kind { raw, new_feature };

  Kind kind = Kind::new_feature;
  int coordinate = 0;

  static SplitDirective raw(int coordinate) { return {Kind::raw, coordinate}; }
  static SplitDirective new_feature() { return {Kind::new_feature, 0}; }

  bool is_raw() const { return kind == Kind::raw; }
  friend bool operator==(const SplitDirective&, const SplitDirective&) = default;
};

using Schedule = std::vector<SplitDirective>;

/// Parses "new" / "raw:1,raw:2,new" (empty string -> empty schedule).
Schedule parse_schedule(std::string_view text);
std::string format_schedule(const Schedule& schedule);
/// Throws DomainError for coordinates outside [1, dim].
void validate_schedule(const Schedule& schedule, std::size_t dim);
/// Number of raw cuts the schedule makes on `axis` (0-based).
int raw_cuts_on_axis(const Schedule& schedule, std::size_t axis);

/// Second-layer leaf for a point with raw coordinates `x` whose encoder leaf
/// mean is `encoder_mean`. Bits are collected most significant first.
std::size_t route_second_layer(const Schedule& schedule, const double* x,
                               double encoder_mean);

struct ShallowOptions {
  /// Empty encoder leaves belong to neither group and predict 0. When false
  /// they enter the second layer with a leaf mean of 0.
  bool exclude_empty = true;
};

/// Two-layer network: a cycling centered encoder of depth k whose leaf mean
/// is fed, together with the raw point, to a level-wise centered tree.
class ShallowTreeNetwork {
 public:
  static ShallowTreeNetwork fit(int k, std::size_t dim, Schedule schedule,
                                const SampleSet& data,
                                ShallowOptions options = {});

  const CenteredTree& encoder() const { return encoder_; }
  const Schedule& schedule() const { return schedule_; }
  const ShallowOptions& options() const { return options_; }
  std::size_t group_count() const { return group_counts_.size(); }
  std::uint64_t group_size(std::size_t g) const { return group_counts_[g]; }
  double group_sum(std::size_t g) const { return group_sums_[g]; }
  double group_mean(std::size_t g) const {
    return group_counts_[g] == 0
               ? 0.0
               : group_sums_[g] / static_cast<double>(group_counts_[g]);
  }

  /// Second-layer group of x, nullopt for an excluded empty encoder leaf or
  /// for an empty schedule (the encoder predicts directly).
  std::optional<std::size_t> group_of(std::span<const double> x) const;
  std::optional<std::size_t> group_of_leaf_point(std::size_t leaf,
                                                 const double* x) const;

  /// With an empty schedule this is the encoder prediction.
  double predict(std::span<const double> x) const;

  nlohmann::json to_json() const;

 private:
  ShallowTreeNetwork(CenteredTree encoder, Schedule schedule,
                     ShallowOptions options);

  CenteredTree encoder_;
  Schedule schedule_;
  ShallowOptions options_;
  std::vector<std::uint64_t> group_counts_;
  std::vector<double> group_sums_;
};

/// First layer CART on raw features, second layer CART on raw features
/// followed by the first layer's outputs (class probabilities or value).
/// A second layer of depth 0 passes the first layer's output through, the
/// CART analogue of the k' = 0 centered network.
struct CartNetwork {
  CartTree first;
  CartTree second;
  bool passthrough = false;

  std::vector<double> augment(std::span<const double> x) const;
  std::span<const double> predict(std::span<const double> x) const;
  std::size_t predict_class(std::span<const double> x) const;
  double predict_value(std::span<const double> x) const;
  std::size_t raw_dim() const { return first.n_features(); }
  std::size_t augmented_dim() const { return second.n_features(); }
};

struct CartNetworkReport {
  /// Feature index of every split of the second tree in node order.
  std::vector<int> split_features;
  std::optional<std::size_t> root_feature;
  double root_threshold = 0.0;
  bool root_on_augmented = false;

  nlohmann::json to_json() const;
};

/// Builds the augmented row-major matrix [x, first.predict(x)].
std::vector<double> augment_features(const CartTree& first,
                                     const DataView& data);

CartNetwork fit_cart_network(const DataView& data, const CartParams& first,
                             const CartParams& second, std::uint64_t seed);
CartNetworkReport describe(const CartNetwork& network);
double score_network(const CartNetwork& network, const DataView& data);

}  // namespace treenet

#endif  // TREENET_SHALLOW_NETWORK_HPP_
