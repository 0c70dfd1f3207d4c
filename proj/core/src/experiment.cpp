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

#include "treenet/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "treenet/binomial.hpp"
#include "treenet/error.hpp"
#include "treenet/format.hpp"
#include "treenet/parallel.hpp"
#include "treenet/risk.hpp"

#ifndef TREENET_GIT_DESCRIBE
#define TREENET_GIT_DESCRIBE "unknown"
#endif

namespace treenet {
namespace {

using nlohmann::json;

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "1" : "0"; }

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("config key '") + key + "': " + e.what());
  }
}

Task parse_task(const std::string& s) {
  if (s == "classification") return Task::classification;
  if (s == "regression") return Task::regression;
  throw DomainError("unknown task '" + s + "'");
}

std::string task_name(Task t) {
  return t == Task::classification ? "classification" : "regression";
}

}  // namespace

std::string_view git_describe() { return TREENET_GIT_DESCRIBE; }

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                std::string_view context) {
  if (!j.is_object()) throw DomainError(std::string(context) + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw DomainError("unknown key '" + item.key() + "' in " + std::string(context));
  }
}

// ---------------------------------------------------------------------------
// Data sources

DataSourceConfig DataSourceConfig::from_json(const json& j) {
  check_keys(j, {"type", "k_star", "dim", "p", "n", "task", "path", "label_column",
                 "split", "train_file", "validation_file", "test_file"},
             "data");
  DataSourceConfig c;
  read(j, "type", c.type);
  read(j, "k_star", c.k_star);
  read(j, "dim", c.dim);
  read(j, "p", c.p);
  read(j, "n", c.n);
  read(j, "path", c.path);
  read(j, "label_column", c.label_column);
  if (j.contains("task")) c.task = parse_task(j.at("task").get<std::string>());
  if (j.contains("split")) {
    const auto v = j.at("split").get<std::vector<double>>();
    if (v.size() != 3) throw DomainError("split needs three fractions");
    c.fractions = {v[0], v[1], v[2]};
  }
  if (j.contains("train_file")) c.train_file = j.at("train_file").get<std::string>();
  if (j.contains("validation_file"))
    c.validation_file = j.at("validation_file").get<std::string>();
  if (j.contains("test_file")) c.test_file = j.at("test_file").get<std::string>();
  if (c.type != "chessboard" && c.type != "csv")
    throw DomainError("data type must be 'chessboard' or 'csv'");
  if (c.type == "csv" && (c.path.empty() || c.label_column.empty()))
    throw DomainError("csv data needs 'path' and 'label_column'");
  const bool any_file = c.train_file || c.validation_file || c.test_file;
  if (any_file && !(c.train_file && c.validation_file && c.test_file))
    throw DomainError("split files need train_file, validation_file and test_file");
  return c;
}

json DataSourceConfig::to_json() const {
  json j{{"type", type}, {"task", task_name(task)},
         {"split", {fractions.train, fractions.validation, fractions.test}}};
  if (type == "chessboard") {
    j["k_star"] = k_star;
    j["dim"] = dim;
    j["p"] = p;
    j["n"] = n;
  } else {
    j["path"] = path;
    j["label_column"] = label_column;
    if (train_file) {
      j["train_file"] = *train_file;
      j["validation_file"] = *validation_file;
      j["test_file"] = *test_file;
    }
  }
  return j;
}

Dataset DataSourceConfig::materialize(std::uint64_t seed) const {
  if (type == "chessboard") {
    const SampleSet s = sample(ChessboardSpec::balanced(k_star, dim, p), n, seed);
    return dataset_from_samples(s, task, fractions, mix64(seed));
  }
  LoadOptions opt;
  opt.label_column = label_column;
  opt.task = task;
  opt.fractions = fractions;
  opt.seed = seed;
  if (train_file)
    opt.explicit_split = SplitIndices{read_index_file(*train_file),
                                      read_index_file(*validation_file),
                                      read_index_file(*test_file)};
  return load_csv(path, opt);
}

// ---------------------------------------------------------------------------
// Bounds sweep

BoundsSweepConfig BoundsSweepConfig::from_json(const json& j) {
  check_keys(j, {"experiment", "name", "regime", "k", "k_star", "dim", "p", "n_black",
                 "n_grid", "repetitions", "schedule", "seed", "jobs"},
             "bounds_sweep config");
  BoundsSweepConfig c;
  if (j.contains("regime")) c.regime = parse_regime(j.at("regime").get<std::string>());
  read(j, "k", c.k);
  read(j, "k_star", c.k_star);
  read(j, "dim", c.dim);
  read(j, "p", c.p);
  if (j.contains("n_black")) c.n_black = j.at("n_black").get<std::uint64_t>();
  read(j, "n_grid", c.n_grid);
  read(j, "repetitions", c.repetitions);
  if (j.contains("schedule")) c.schedule = parse_schedule(j.at("schedule").get<std::string>());
  read(j, "seed", c.seed);
  read(j, "jobs", c.jobs);
  c.validate();
  return c;
}

json BoundsSweepConfig::to_json() const {
  json j{{"experiment", "bounds_sweep"},
         {"regime", std::string(regime_name(regime))},
         {"k", k},
         {"k_star", k_star},
         {"dim", dim},
         {"p", p},
         {"n_grid", n_grid},
         {"repetitions", repetitions},
         {"schedule", format_schedule(schedule)},
         {"seed", seed}};
  if (n_black) j["n_black"] = *n_black;
  return j;
}

void BoundsSweepConfig::validate() const {
  if (n_grid.empty()) throw DomainError("n_grid must not be empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw DomainError("n_grid entries must be >= 1");
    if (i && n_grid[i] <= n_grid[i - 1])
      throw DomainError("n_grid must be strictly increasing");
  }
  if (repetitions < 1) throw DomainError("repetitions must be >= 1");
}

CsvTable bounds_sweep(const BoundsSweepConfig& c) {
  c.validate();
  const bool shallow_model =
      c.regime == Regime::shallow_small_k || c.regime == Regime::shallow_large_k;
  const ModelFamily family = shallow_model ? ModelFamily::shallow(c.k, c.schedule)
                                           : ModelFamily::single_tree(c.k);

  std::optional<ChessboardSpec> board;
  std::optional<RandomChessboardSpec> random_board;
  std::optional<DiscretizedSpec> uniform;
  std::uint64_t n_black = 0;
  if (c.regime == Regime::random_chessboard) {
    n_black = c.n_black.value_or(std::uint64_t{1} << std::max(0, c.k_star - 1));
    random_board.emplace(c.k_star, c.dim, c.p, n_black);
  } else if (c.regime == Regime::uniform_labels) {
    uniform.emplace(0, c.dim, std::vector<double>{c.p});
  } else {
    board = ChessboardSpec::balanced(c.k_star, c.dim, c.p);
    n_black = board->n_black();
  }

  auto report_for = [&](std::uint64_t n) -> BoundReport {
    switch (c.regime) {
      case Regime::single_tree_small_k: return bound_single_tree_small_k(c.k, n, c.p);
      case Regime::shallow_small_k: return bound_shallow_small_k(c.k, n, c.p);
      case Regime::single_tree_large_k: return bound_single_tree_large_k(c.k, n, c.p);
      case Regime::shallow_large_k:
        return bound_shallow_large_k(c.k, c.k_star, n_black, n, c.p);
      case Regime::uniform_labels: return bound_uniform_labels(c.k, n, c.p);
      case Regime::random_chessboard: {
        const auto both = bound_random_chessboard(c.k, c.k_star, n_black, n, c.p);
        BoundReport r = both.single_tree;
        r.constants["shallow_infinite_lower"] = both.shallow_infinite.lower;
        r.constants["shallow_infinite_upper"] = both.shallow_infinite.upper;
        return r;
      }
    }
    throw DomainError("unknown regime");
  };

  CsvTable table;
  for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
    const std::uint64_t n = c.n_grid[i];
    const BoundReport report = report_for(n);
    // Sweep point i uses its own seed block so adding n values does not
    // shift the streams of the others.
    const std::uint64_t seed = run_seed(c.seed, i);
    RiskEstimate est;
    if (random_board)
      est = mc_risk(family, *random_board, n, c.repetitions, seed, c.jobs);
    else
      est = mc_risk(family, board ? board->field() : uniform->field(), n,
                    c.repetitions, seed, c.jobs);
    if (table.header.empty()) {
      table.header = {"n", "model", "schedule", "mc_mean", "mc_se", "repetitions", "seeds_digest",
                      "lower", "upper", "lower_valid"};
      for (const auto& [name, value] : report.constants) table.header.push_back(name);
    }
    std::vector<std::string> row{fmt(n),
                                 shallow_model ? "shallow" : "single_tree",
                                 shallow_model ? format_schedule(family.schedule) : "",
                                 fmt(est.mean),
                                 fmt(est.standard_error),
                                 fmt(static_cast<std::uint64_t>(est.repetitions)),
                                 fmt(est.seeds_digest),
                                 fmt(report.lower),
                                 fmt(report.upper),
                                 fmt(report.lower_valid)};
    for (const auto& [name, value] : report.constants) row.push_back(fmt(value));
    table.add_row(std::move(row));
  }
  return table;
}

// ---------------------------------------------------------------------------
// CART network pipelines

DepthSweepConfig DepthSweepConfig::from_json(const json& j) {
  check_keys(j, {"experiment", "name", "data", "first_depths", "second_depths",
                 "min_samples_leaf", "runs", "seed", "jobs"},
             "depth_sweep config");
  DepthSweepConfig c;
  if (j.contains("data")) c.data = DataSourceConfig::from_json(j.at("data"));
  read(j, "first_depths", c.first_depths);
  read(j, "second_depths", c.second_depths);
  read(j, "min_samples_leaf", c.min_samples_leaf);
  read(j, "runs", c.runs);
  read(j, "seed", c.seed);
  read(j, "jobs", c.jobs);
  if (c.runs < 1) throw DomainError("runs must be >= 1");
  if (c.first_depths.empty() || c.second_depths.empty())
    throw DomainError("depth grids must not be empty");
  return c;
}

json DepthSweepConfig::to_json() const {
  return {{"experiment", "depth_sweep"}, {"data", data.to_json()},
          {"first_depths", first_depths}, {"second_depths", second_depths},
          {"min_samples_leaf", min_samples_leaf}, {"runs", runs}, {"seed", seed}};
}

CsvTable depth_sweep(const DepthSweepConfig& c) {
  struct Row {
    int first, second;
    double first_score, score;
    std::string root;
    bool augmented;
  };
  std::vector<std::vector<Row>> per_run(c.runs);
  parallel_for(c.runs, c.jobs, [&](std::size_t r) {
    const std::uint64_t seed = run_seed(c.seed, r);
    const Dataset ds = c.data.materialize(seed);
    const Matrix train = ds.train();
    const Matrix test = ds.test();
    for (int f : c.first_depths) {
      for (int s : c.second_depths) {
        CartParams first{ds.task, ds.n_classes(), f, c.min_samples_leaf, 0};
        CartParams second = first;
        second.max_depth = s;
        const CartNetwork net = fit_cart_network(train.view(), first, second, seed);
        const CartNetworkReport rep = describe(net);
        per_run[r].push_back({f, s, score_tree(net.first, test.view()),
                              score_network(net, test.view()),
                              rep.root_feature ? fmt(static_cast<std::uint64_t>(*rep.root_feature)) : "",
                              rep.root_on_augmented});
      }
    }
  });
  CsvTable t;
  t.header = {"run", "seed", "first_depth", "second_depth", "first_layer_test_score",
              "test_score", "root_feature", "root_on_augmented"};
  for (std::size_t r = 0; r < c.runs; ++r)
    for (const Row& row : per_run[r])
      t.add_row({fmt(static_cast<std::uint64_t>(r)), fmt(run_seed(c.seed, r)),
                 fmt(row.first), fmt(row.second), fmt(row.first_score), fmt(row.score),
                 row.root, fmt(row.augmented)});
  return t;
}

CartNetworkConfig CartNetworkConfig::from_json(const json& j) {
  check_keys(j, {"experiment", "name", "data", "first_depth", "second_depth",
                 "min_samples_leaf", "runs", "seed", "jobs"},
             "cart_network config");
  CartNetworkConfig c;
  if (j.contains("data")) c.data = DataSourceConfig::from_json(j.at("data"));
  read(j, "first_depth", c.first_depth);
  read(j, "second_depth", c.second_depth);
  read(j, "min_samples_leaf", c.min_samples_leaf);
  read(j, "runs", c.runs);
  read(j, "seed", c.seed);
  read(j, "jobs", c.jobs);
  if (c.runs < 1) throw DomainError("runs must be >= 1");
  return c;
}

json CartNetworkConfig::to_json() const {
  return {{"experiment", "cart_network"}, {"data", data.to_json()},
          {"first_depth", first_depth}, {"second_depth", second_depth},
          {"min_samples_leaf", min_samples_leaf}, {"runs", runs}, {"seed", seed}};
}

CsvTable cart_network_runs(const CartNetworkConfig& c) {
  std::vector<std::vector<std::string>> rows(c.runs);
  parallel_for(c.runs, c.jobs, [&](std::size_t r) {
    const std::uint64_t seed = run_seed(c.seed, r);
    const Dataset ds = c.data.materialize(seed);
    const Matrix train = ds.train();
    const Matrix test = ds.test();
    CartParams first{ds.task, ds.n_classes(), c.first_depth, c.min_samples_leaf, 0};
    CartParams second = first;
    second.max_depth = c.second_depth;
    const CartNetwork net = fit_cart_network(train.view(), first, second, seed);
    const CartNetworkReport rep = describe(net);
    std::string features;
    for (std::size_t i = 0; i < rep.split_features.size(); ++i)
      features += (i ? ";" : "") + std::to_string(rep.split_features[i]);
    rows[r] = {fmt(static_cast<std::uint64_t>(r)),
               fmt(seed),
               rep.root_feature ? fmt(static_cast<std::uint64_t>(*rep.root_feature)) : "",
               fmt(rep.root_threshold),
               fmt(rep.root_on_augmented),
               fmt(static_cast<std::uint64_t>(net.raw_dim())),
               fmt(static_cast<std::uint64_t>(net.augmented_dim())),
               fmt(score_tree(net.first, test.view())),
               fmt(score_network(net, test.view())),
               features};
  });
  CsvTable t;
  t.header = {"run", "seed", "root_feature", "root_threshold", "root_on_augmented",
              "raw_dim", "augmented_dim", "first_layer_test_score", "network_test_score",
              "split_features"};
  for (auto& row : rows) t.add_row(std::move(row));
  return t;
}

// ---------------------------------------------------------------------------
// Cascade sub-models

CascadeSubmodelsConfig CascadeSubmodelsConfig::from_json(const json& j) {
  check_keys(j, {"experiment", "name", "data", "cascade", "max_layers", "runs", "seed",
                 "jobs"},
             "cascade_submodels config");
  CascadeSubmodelsConfig c;
  c.cascade = CascadeConfig::light_df();
  if (j.contains("data")) c.data = DataSourceConfig::from_json(j.at("data"));
  if (j.contains("cascade")) c.cascade = CascadeConfig::from_json(j.at("cascade"));
  read(j, "max_layers", c.max_layers);
  read(j, "runs", c.runs);
  read(j, "seed", c.seed);
  read(j, "jobs", c.jobs);
  if (c.runs < 1) throw DomainError("runs must be >= 1");
  if (c.max_layers.empty()) throw DomainError("max_layers must not be empty");
  for (std::size_t l : c.max_layers)
    if (l < 1) throw DomainError("max_layers entries must be >= 1");
  return c;
}

json CascadeSubmodelsConfig::to_json() const {
  return {{"experiment", "cascade_submodels"}, {"data", data.to_json()},
          {"cascade", cascade.to_json()}, {"max_layers", max_layers},
          {"runs", runs}, {"seed", seed}};
}

SubmodelTables cascade_submodels(const CascadeSubmodelsConfig& c) {
  const std::size_t budget = *std::max_element(c.max_layers.begin(), c.max_layers.end());
  CascadeConfig config = c.cascade;
  config.max_layers = budget;
  config.stop_patience = budget;
  config.validate();

  struct Run {
    std::vector<double> validation, test;
  };
  std::vector<Run> runs(c.runs);
  const unsigned outer = std::min<unsigned>(resolve_jobs(c.jobs), static_cast<unsigned>(c.runs));
  const unsigned inner = std::max(1u, resolve_jobs(c.jobs) / std::max(1u, outer));
  parallel_for(c.runs, outer, [&](std::size_t r) {
    const std::uint64_t seed = run_seed(c.seed, r);
    const Dataset ds = c.data.materialize(seed);
    const Matrix train = ds.train(), val = ds.validation(), test = ds.test();
    if (val.size() == 0) throw DataError("cascade sub-models need a validation split");
    const CascadeModel model =
        fit_cascade(config, train.view(), val.view(), ds.task, ds.n_classes(), seed, inner);
    runs[r].validation = model.validation_scores();
    for (std::size_t t = 1; t <= model.layer_count(); ++t)
      runs[r].test.push_back(test.size() ? model.score_at_layer(t, test.view()) : 0.0);
  });

  SubmodelTables out;
  out.scores.header = {"run", "seed", "layer", "validation_score", "test_score"};
  for (std::size_t r = 0; r < c.runs; ++r)
    for (std::size_t t = 0; t < runs[r].validation.size(); ++t)
      out.scores.add_row({fmt(static_cast<std::uint64_t>(r)), fmt(run_seed(c.seed, r)),
                          fmt(static_cast<std::uint64_t>(t + 1)),
                          fmt(runs[r].validation[t]), fmt(runs[r].test[t])});

  out.counts.header = {"max_layers", "optimal_layer", "count"};
  for (std::size_t budget_l : c.max_layers) {
    std::vector<std::uint64_t> counts(budget_l, 0);
    for (const Run& run : runs) {
      const std::size_t usable = std::min(budget_l, run.validation.size());
      std::size_t best = 0;
      for (std::size_t t = 1; t < usable; ++t)
        if (run.validation[t] > run.validation[best]) best = t;
      ++counts[best];
    }
    for (std::size_t t = 0; t < budget_l; ++t)
      out.counts.add_row({fmt(static_cast<std::uint64_t>(budget_l)),
                          fmt(static_cast<std::uint64_t>(t + 1)), fmt(counts[t])});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lemma checks

LemmaChecksConfig LemmaChecksConfig::from_json(const json& j) {
  check_keys(j, {"experiment", "name", "lemma1_k_stars", "lemma1_draws", "lemma1_dim",
                 "lemma2", "binomial_n_max", "binomial_p", "seed", "jobs"},
             "lemma_checks config");
  LemmaChecksConfig c;
  read(j, "lemma1_k_stars", c.lemma1_k_stars);
  read(j, "lemma1_draws", c.lemma1_draws);
  read(j, "lemma1_dim", c.lemma1_dim);
  if (j.contains("lemma2")) {
    c.lemma2.clear();
    for (const auto& item : j.at("lemma2")) {
      check_keys(item, {"k_star", "dim", "k", "max_kprime"}, "lemma2 entry");
      c.lemma2.push_back({item.at("k_star").get<int>(), item.value("dim", 2),
                          item.at("k").get<int>(), item.at("max_kprime").get<int>()});
    }
  }
  read(j, "binomial_n_max", c.binomial_n_max);
  read(j, "binomial_p", c.binomial_p);
  read(j, "seed", c.seed);
  read(j, "jobs", c.jobs);
  return c;
}

json LemmaChecksConfig::to_json() const {
  json searches = json::array();
  for (const auto& s : lemma2)
    searches.push_back({{"k_star", s.k_star}, {"dim", s.dim}, {"k", s.k},
                        {"max_kprime", s.max_kprime}});
  return {{"experiment", "lemma_checks"}, {"lemma1_k_stars", lemma1_k_stars},
          {"lemma1_draws", lemma1_draws}, {"lemma1_dim", lemma1_dim},
          {"lemma2", searches}, {"binomial_n_max", binomial_n_max},
          {"binomial_p", binomial_p}, {"seed", seed}};
}

CsvTable lemma_checks(const LemmaChecksConfig& c) {
  CsvTable t;
  t.header = {"check", "parameters", "value", "reference", "holds", "detail"};
  for (int ks : c.lemma1_k_stars) {
    const Lemma1Check r = lemma1_check(ks, c.lemma1_draws, c.seed, c.lemma1_dim, c.jobs);
    const std::string params = "k_star=" + fmt(ks) + ";dim=" + fmt(c.lemma1_dim) +
                               ";draws=" + fmt(static_cast<std::uint64_t>(c.lemma1_draws));
    t.add_row({"lemma1_shallow", params, fmt(r.mean_shallow_risk), fmt(r.bound),
               fmt(r.holds), "se=" + fmt(r.standard_error)});
    t.add_row({"lemma1_single_tree", params, fmt(r.max_single_tree_risk), "0",
               fmt(r.max_single_tree_risk == 0.0), ""});
  }
  for (const auto& s : c.lemma2) {
    const ChessboardSpec board = ChessboardSpec::balanced(s.k_star, s.dim, 0.8);
    const ScheduleSearch r = lemma2_schedule_search(board.field(), s.k, s.max_kprime);
    bool raw_only = std::all_of(r.best.begin(), r.best.end(),
                                [](const SplitDirective& d) { return d.is_raw(); });
    const bool expect_new = s.k >= s.k_star;
    const bool shape_ok =
        expect_new ? r.best == Schedule{SplitDirective::new_feature()} : raw_only;
    t.add_row({"lemma2_search",
               "k_star=" + fmt(s.k_star) + ";dim=" + fmt(s.dim) + ";k=" + fmt(s.k) +
                   ";max_kprime=" + fmt(s.max_kprime),
               fmt(r.best_risk), "0", fmt(r.best_risk <= 1e-12 && shape_ok),
               format_schedule(r.best)});
  }
  for (double p : c.binomial_p) {
    std::uint64_t total = 0, failed = 0;
    std::string first_failure;
    for (std::uint64_t n = 1; n <= c.binomial_n_max; ++n) {
      for (const auto& check : binomial_oracles(n, p).checks()) {
        ++total;
        if (!check.holds) {
          if (failed++ == 0) first_failure = "n=" + fmt(n) + " " + check.name;
        }
      }
    }
    t.add_row({"binomial_oracles",
               "n=1.." + fmt(c.binomial_n_max) + ";p=" + fmt(p),
               fmt(failed), "0", fmt(failed == 0),
               "checks=" + fmt(total) + (first_failure.empty() ? "" : " first=" + first_failure)});
  }
  return t;
}

// ---------------------------------------------------------------------------

ExperimentResult run_experiment(const json& config, const std::string& out_dir) {
  if (!config.is_object() || !config.contains("experiment"))
    throw DomainError("config needs an 'experiment' key");
  const std::string kind = config.at("experiment").get<std::string>();
  const std::string name = config.value("name", kind);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  ExperimentResult result;
  json echo;
  std::vector<std::uint64_t> seeds;
  auto emit = [&](const std::string& file, const CsvTable& table) {
    write_csv_file((dir / file).string(), table);
    result.files.push_back(file);
  };
  auto seed_list = [](std::uint64_t base, std::size_t runs) {
    std::vector<std::uint64_t> out;
    for (std::size_t r = 0; r < runs; ++r) out.push_back(run_seed(base, r));
    return out;
  };

  if (kind == "bounds_sweep") {
    const auto c = BoundsSweepConfig::from_json(config);
    echo = c.to_json();
    seeds = seed_list(c.seed, c.n_grid.size());
    emit(name + ".csv", bounds_sweep(c));
  } else if (kind == "depth_sweep") {
    const auto c = DepthSweepConfig::from_json(config);
    echo = c.to_json();
    seeds = seed_list(c.seed, c.runs);
    emit(name + ".csv", depth_sweep(c));
  } else if (kind == "cart_network") {
    const auto c = CartNetworkConfig::from_json(config);
    echo = c.to_json();
    seeds = seed_list(c.seed, c.runs);
    emit(name + ".csv", cart_network_runs(c));
  } else if (kind == "cascade_submodels") {
    const auto c = CascadeSubmodelsConfig::from_json(config);
    echo = c.to_json();
    seeds = seed_list(c.seed, c.runs);
    const SubmodelTables tables = cascade_submodels(c);
    emit(name + ".csv", tables.counts);
    emit(name + "_scores.csv", tables.scores);
  } else if (kind == "lemma_checks") {
    const auto c = LemmaChecksConfig::from_json(config);
    echo = c.to_json();
    seeds = {c.seed};
    emit(name + ".csv", lemma_checks(c));
  } else {
    throw DomainError("unknown experiment '" + kind + "'");
  }
  echo["name"] = name;

  result.manifest = {{"experiment", kind},
                     {"config", echo},
                     {"git_describe", std::string(git_describe())},
                     {"seeds", seeds},
                     {"outputs", result.files}};
  const std::string manifest_file = name + ".manifest.json";
  std::ofstream out(dir / manifest_file, std::ios::binary);
  if (!out) throw DataError("cannot write manifest in '" + out_dir + "'");
  out << result.manifest.dump(2) << '\n';
  result.files.push_back(manifest_file);
  return result;
}

}  // namespace treenet
