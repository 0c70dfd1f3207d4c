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

#ifndef TREENET_EXPERIMENT_HPP_
#define TREENET_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "treenet/bounds.hpp"
#include "treenet/cascade.hpp"
#include "treenet/csv.hpp"
#include "treenet/dataset.hpp"
#include "treenet/shallow_network.hpp"

namespace treenet {

/// `git describe` of the source tree at configure time.
std::string_view git_describe();

/// Where a pipeline gets its data. A chessboard source draws a fresh
/// balanced board sample per seed; a CSV source is loaded once and re-split
/// per seed unless explicit split files are given.
struct DataSourceConfig {
  std::string type = "chessboard";
  int k_star = 6;
  int dim = 2;
  double p = 0.8;
  std::size_t n = 5000;
  Task task = Task::classification;
  std::string path;
  std::string label_column;
  SplitFractions fractions;
  std::optional<std::string> train_file, validation_file, test_file;

  static DataSourceConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  Dataset materialize(std::uint64_t seed) const;
};

/// Seed of run `run` in a sweep starting at `base`.
inline std::uint64_t run_seed(std::uint64_t base, std::size_t run) { return base + run; }

struct BoundsSweepConfig {
  Regime regime = Regime::single_tree_small_k;
  int k = 2;
  int k_star = 4;
  int dim = 2;
  double p = 0.8;
  /// Black cells for the random board; defaults to 2^(k*-1).
  std::optional<std::uint64_t> n_black;
  std::vector<std::uint64_t> n_grid{16, 32, 64, 128, 256, 512, 1024};
  std::size_t repetitions = 1000;
  Schedule schedule{SplitDirective::new_feature()};
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  static BoundsSweepConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

/// One row per n: n, model, schedule, mc_mean, mc_se, repetitions, seeds_digest,
/// lower, upper, lower_valid, then the report constants.
CsvTable bounds_sweep(const BoundsSweepConfig& config);

struct DepthSweepConfig {
  DataSourceConfig data;
  std::vector<int> first_depths{2};
  std::vector<int> second_depths{0, 1, 2, 3, 4, 5, 6, 8, 10};
  std::size_t min_samples_leaf = 1;
  std::size_t runs = 10;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  static DepthSweepConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Per-run test scores of CART networks over a grid of first and second
/// layer depths.
CsvTable depth_sweep(const DepthSweepConfig& config);

struct CartNetworkConfig {
  DataSourceConfig data;
  int first_depth = 6;
  int second_depth = -1;
  std::size_t min_samples_leaf = 1;
  std::size_t runs = 10;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  static CartNetworkConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Per-run structure report: root split of the second layer and scores.
CsvTable cart_network_runs(const CartNetworkConfig& config);

struct CascadeSubmodelsConfig {
  DataSourceConfig data;
  CascadeConfig cascade;
  std::vector<std::size_t> max_layers{1, 2, 3, 4, 5, 6, 7, 8};
  std::size_t runs = 10;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  static CascadeSubmodelsConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct SubmodelTables {
  /// max_layers, optimal_layer, count for every optimal_layer <= max_layers.
  CsvTable counts;
  /// run, seed, layer, validation_score, test_score.
  CsvTable scores;
};

/// Fits one cascade per run with the largest layer budget and no early
/// stopping, then reads off the best sub-model for every budget.
SubmodelTables cascade_submodels(const CascadeSubmodelsConfig& config);

struct LemmaChecksConfig {
  std::vector<int> lemma1_k_stars{2, 4};
  std::size_t lemma1_draws = 10000;
  int lemma1_dim = 2;
  struct Search {
    int k_star;
    int dim;
    int k;
    int max_kprime;
  };
  std::vector<Search> lemma2{{4, 2, 2, 4}, {4, 2, 4, 1}, {6, 2, 6, 1}};
  std::uint64_t binomial_n_max = 200;
  std::vector<double> binomial_p{0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  static LemmaChecksConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Columns: check, parameters, value, reference, holds, detail.
CsvTable lemma_checks(const LemmaChecksConfig& config);

struct ExperimentResult {
  std::vector<std::string> files;
  nlohmann::json manifest;
};

/// Runs the pipeline named by config["experiment"] and writes
/// `<name>.csv` (plus `<name>_scores.csv` for cascade_submodels) and
/// `<name>.manifest.json` under `out_dir`, where name defaults to the
/// experiment kind.
ExperimentResult run_experiment(const nlohmann::json& config,
                                const std::string& out_dir);

/// Throws DomainError naming the first key of `j` outside `allowed`.
void check_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                std::string_view context);

}  // namespace treenet

#endif  // TREENET_EXPERIMENT_HPP_
