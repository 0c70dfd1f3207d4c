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

#ifndef TREENET_CASCADE_HPP_
#define TREENET_CASCADE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "treenet/cart.hpp"
#include "treenet/forest.hpp"

namespace treenet {

struct CascadeConfig {
  std::size_t max_layers = 1;
  std::vector<ForestSpec> forests;
  /// Consecutive non-improving layers tolerated before growth stops.
  std::size_t stop_patience = 3;
  /// Concatenate the raw features to the forest outputs from layer 2 on.
  bool pass_raw = true;

  /// 8 forests per layer (4 Breiman, 4 completely random), 500 trees each,
  /// unlimited depth, stop after 3 non-improving layers.
  static CascadeConfig default_df();
  /// 2 layers of one Breiman and one completely random forest, 50 trees of
  /// depth 30.
  static CascadeConfig light_df();

  void validate() const;
  nlohmann::json to_json() const;
  /// Accepts {"preset": "default_df" | "light_df", ...overrides} or a full
  /// object with max_layers, stop_patience, pass_raw and forests.
  static CascadeConfig from_json(const nlohmann::json& j);
};

class CascadeModel {
 public:
  Task task() const { return task_; }
  std::size_t n_classes() const { return n_classes_; }
  std::size_t raw_dim() const { return raw_dim_; }
  /// Per-forest output width (n_classes, or 1 for regression).
  std::size_t forest_width() const {
    return task_ == Task::classification ? n_classes_ : 1;
  }
  const CascadeConfig& config() const { return config_; }
  std::size_t layer_count() const { return layers_.size(); }
  const std::vector<Forest>& layer(std::size_t t) const { return layers_.at(t - 1); }
  /// Validation score of every fitted layer (index 0 is layer 1).
  const std::vector<double>& validation_scores() const { return scores_; }
  /// 1-based index of the best sub-model.
  std::size_t best_layer() const { return best_layer_; }

  /// Width of the feature vector consumed by layer t (1-based).
  std::size_t input_width(std::size_t t) const;

  /// Average of layer t's forest outputs for the cascade truncated at t.
  std::vector<double> predict_at_layer(std::size_t t,
                                       std::span<const double> x) const;
  std::vector<double> predict(std::span<const double> x) const {
    return predict_at_layer(best_layer_, x);
  }
  std::size_t predict_class(std::span<const double> x) const;
  double predict_value(std::span<const double> x) const;

  /// Accuracy or R^2 of the cascade truncated at layer t.
  double score_at_layer(std::size_t t, const DataView& data) const;

  friend CascadeModel fit_cascade(const CascadeConfig&, const DataView&,
                                  const DataView&, Task, std::size_t,
                                  std::uint64_t, unsigned);

 private:
  std::vector<double> next_input(std::size_t t, std::span<const double> raw,
                                 std::span<const double> input) const;

  Task task_ = Task::classification;
  std::size_t n_classes_ = 2;
  std::size_t raw_dim_ = 0;
  CascadeConfig config_;
  std::vector<std::vector<Forest>> layers_;
  std::vector<double> scores_;
  std::size_t best_layer_ = 1;
};

/// Forest j of layer t (both 0-based) draws from Rng(seed, t * F + j), so a
/// one-layer one-forest cascade reproduces fit_forest(..., seed).
CascadeModel fit_cascade(const CascadeConfig& config, const DataView& train,
                         const DataView& validation, Task task,
                         std::size_t n_classes, std::uint64_t seed,
                         unsigned jobs = 1);

/// A single Breiman forest with as many trees as the whole cascade
/// (max_layers x total trees per layer) and the per-tree parameters of the
/// first Breiman forest of the config (the first forest if none).
ForestSpec flattened_spec(const CascadeConfig& config);
Forest flatten_as_rf(const CascadeConfig& config, const DataView& data,
                     Task task, std::size_t n_classes, std::uint64_t seed,
                     unsigned jobs = 1);

}  // namespace treenet

#endif  // TREENET_CASCADE_HPP_
