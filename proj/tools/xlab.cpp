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

// xlab: command line front end for the treenet experiments.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "treenet/binomial.hpp"
#include "treenet/bounds.hpp"
#include "treenet/cascade.hpp"
#include "treenet/chessboard.hpp"
#include "treenet/csv.hpp"
#include "treenet/dataset.hpp"
#include "treenet/error.hpp"
#include "treenet/experiment.hpp"
#include "treenet/format.hpp"
#include "treenet/plotdata.hpp"
#include "treenet/risk.hpp"
#include "treenet/shallow_network.hpp"

namespace {

using nlohmann::json;
using namespace treenet;

enum Exit { kOk = 0, kUsage = 1, kData = 2, kBudget = 3 };

struct Globals {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out_dir = ".";
};

struct DataFlags {
  std::string path;
  std::string label;
  std::string task = "classification";
  std::vector<double> split{0.6, 0.2, 0.2};
  int k_star = 6;
  int dim = 2;
  double p = 0.8;
  std::size_t n = 5000;

  void attach(CLI::App* app) {
    app->add_option("--data", path, "CSV dataset (default: balanced chessboard sample)");
    app->add_option("--label", label, "Label column of the CSV dataset");
    app->add_option("--task", task, "classification or regression")
        ->check(CLI::IsMember({"classification", "regression"}));
    app->add_option("--split", split, "Train, validation and test fractions")
        ->expected(3)->delimiter(',');
    app->add_option("--kstar", k_star, "Chessboard cell exponent");
    app->add_option("--dim", dim, "Chessboard dimension");
    app->add_option("--p", p, "Chessboard label probability");
    app->add_option("--n", n, "Chessboard sample size");
  }

  json to_json() const {
    json j{{"task", task}, {"split", split}};
    if (!path.empty()) {
      j["type"] = "csv";
      j["path"] = path;
      j["label_column"] = label;
    } else {
      j["type"] = "chessboard";
      j["k_star"] = k_star;
      j["dim"] = dim;
      j["p"] = p;
      j["n"] = n;
    }
    return j;
  }
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
}

void print_result(const ExperimentResult& result, const std::string& out_dir) {
  for (const auto& f : result.files)
    std::cout << (std::filesystem::path(out_dir) / f).string() << '\n';
}

void write_or_print(const CsvTable& table, const std::string& out) {
  if (out.empty() || out == "-") {
    write_csv(std::cout, table);
  } else {
    write_csv_file(out, table);
    std::cout << out << '\n';
  }
}

std::string under(const Globals& g, const std::string& file) {
  if (file.empty() || file == "-" || std::filesystem::path(file).is_absolute()) return file;
  std::filesystem::create_directories(g.out_dir);
  return (std::filesystem::path(g.out_dir) / file).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xlab: tree network and deep forest experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Directory for result files")->capture_default_str();

  // gen-chessboard
  auto* gen = app.add_subcommand("gen-chessboard", "Sample a chessboard dataset as CSV");
  int gen_kstar = 4, gen_dim = 2;
  double gen_p = 0.8;
  std::size_t gen_n = 1000;
  std::string gen_coloring = "balanced", gen_out;
  gen->add_option("--kstar", gen_kstar, "Cell exponent (2^k* cells)")->capture_default_str();
  gen->add_option("--dim", gen_dim, "Dimension")->capture_default_str();
  gen->add_option("--p", gen_p, "P[Y=1] on black cells")->capture_default_str();
  gen->add_option("--n", gen_n, "Sample size")->capture_default_str();
  gen->add_option("--coloring", gen_coloring,
                  "balanced, random:N (i.i.d. cells, N black on average) or file:<path>")
      ->capture_default_str();
  gen->add_option("--out", gen_out, "Output CSV under --out-dir ('-' for stdout)");

  // fit-shallow
  auto* fit = app.add_subcommand("fit-shallow", "Fit a shallow tree network on a chessboard");
  int fit_kstar = 4, fit_dim = 2, fit_k = 4;
  double fit_p = 0.8;
  std::size_t fit_n = 1000;
  std::string fit_schedule = "new";
  bool fit_keep_empty = false;
  fit->add_option("--kstar", fit_kstar)->capture_default_str();
  fit->add_option("--dim", fit_dim)->capture_default_str();
  fit->add_option("--p", fit_p)->capture_default_str();
  fit->add_option("--k", fit_k, "Encoder depth")->capture_default_str();
  fit->add_option("--n", fit_n)->capture_default_str();
  fit->add_option("--schedule", fit_schedule, "\"new\", \"raw:1,raw:2,...\" or \"none\"")
      ->capture_default_str();
  fit->add_flag("--keep-empty", fit_keep_empty,
                "Send empty encoder leaves to the second layer with mean 0");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Monte Carlo risk against closed-form bounds");
  std::string b_regime = "single_tree_small_k", b_schedule = "new";
  int b_k = 2, b_kstar = 4, b_dim = 2;
  double b_p = 0.8;
  std::vector<std::uint64_t> b_grid{16, 32, 64, 128, 256, 512, 1024};
  std::size_t b_reps = 1000;
  std::uint64_t b_black = 0;
  std::string b_name = "bounds", b_out;
  bounds->add_option("--regime", b_regime)->capture_default_str();
  bounds->add_option("--k", b_k)->capture_default_str();
  bounds->add_option("--kstar", b_kstar)->capture_default_str();
  bounds->add_option("--dim", b_dim)->capture_default_str();
  bounds->add_option("--p", b_p)->capture_default_str();
  bounds->add_option("--n-grid", b_grid, "Comma separated sample sizes")->delimiter(',');
  bounds->add_option("--reps,--repetitions", b_reps, "Monte Carlo repetitions")
      ->capture_default_str();
  bounds->add_option("--schedule", b_schedule, "Second layer for shallow regimes")
      ->capture_default_str();
  bounds->add_option("--n-black", b_black, "Black cell count for random_chessboard");
  bounds->add_option("--name", b_name, "Output file stem")->capture_default_str();
  bounds->add_option("--out", b_out, "Extra copy of the result CSV ('-' for stdout)");

  // lemma2-search
  auto* l2 = app.add_subcommand("lemma2-search", "Exhaustive infinite-sample schedule search");
  int l2_kstar = 4, l2_dim = 2, l2_k = 2, l2_max = 4;
  double l2_p = 0.8;
  std::uint64_t l2_budget = 1'000'000;
  std::string l2_out;
  l2->add_option("--kstar", l2_kstar)->capture_default_str();
  l2->add_option("--dim", l2_dim)->capture_default_str();
  l2->add_option("--k", l2_k)->capture_default_str();
  l2->add_option("--p", l2_p)->capture_default_str();
  l2->add_option("--max-kprime", l2_max)->capture_default_str();
  l2->add_option("--budget", l2_budget, "Maximum number of schedules")->capture_default_str();
  l2->add_option("--out", l2_out, "CSV of every schedule under --out-dir");

  // lemma1-check
  auto* l1 = app.add_subcommand("lemma1-check", "Random-probability boards vs the lower bound");
  int l1_kstar = 4, l1_dim = 2;
  std::size_t l1_draws = 10000;
  l1->add_option("--kstar", l1_kstar)->capture_default_str();
  l1->add_option("--dim", l1_dim)->capture_default_str();
  l1->add_option("--draws", l1_draws)->capture_default_str();

  // binomial-oracles
  auto* bin = app.add_subcommand("binomial-oracles", "Exact binomial moments and inequalities");
  std::uint64_t bin_n = 10;
  double bin_p = 0.5;
  std::string bin_out;
  bin->add_option("--n", bin_n)->capture_default_str();
  bin->add_option("--p", bin_p)->capture_default_str();
  bin->add_option("--out", bin_out, "CSV under --out-dir ('-' for stdout)");

  // cascade
  auto* casc = app.add_subcommand("cascade", "Fit a deep forest cascade");
  DataFlags casc_data;
  casc_data.attach(casc);
  std::string casc_preset = "light_df", casc_config;
  bool casc_flatten = false;
  casc->add_option("--preset", casc_preset)
      ->check(CLI::IsMember({"light_df", "default_df"}))->capture_default_str();
  casc->add_option("--config", casc_config, "JSON cascade configuration");
  casc->add_flag("--flat", casc_flatten, "Also fit the flattened random forest baseline");

  // submodels
  auto* sub = app.add_subcommand("submodels", "Best sub-model counts per layer budget");
  DataFlags sub_data;
  sub_data.attach(sub);
  std::string sub_preset = "light_df", sub_config, sub_name = "submodels";
  std::vector<std::size_t> sub_layers{1, 2, 3, 4, 5, 6, 7, 8};
  std::size_t sub_runs = 10;
  sub->add_option("--preset", sub_preset)
      ->check(CLI::IsMember({"light_df", "default_df"}))->capture_default_str();
  sub->add_option("--config", sub_config, "JSON cascade configuration");
  sub->add_option("--max-layers", sub_layers)->delimiter(',');
  sub->add_option("--runs", sub_runs)->capture_default_str();
  sub->add_option("--name", sub_name)->capture_default_str();

  // cart-net
  auto* cn = app.add_subcommand("cart-net", "Two-layer CART network structure report");
  DataFlags cn_data;
  cn_data.attach(cn);
  int cn_first = 6, cn_second = -1;
  std::size_t cn_runs = 10, cn_leaf = 1;
  std::string cn_name = "cart_net";
  cn->add_option("--first-depth", cn_first)->capture_default_str();
  cn->add_option("--second-depth", cn_second, "-1 for unlimited")->capture_default_str();
  cn->add_option("--min-samples-leaf", cn_leaf)->capture_default_str();
  cn->add_option("--runs", cn_runs)->capture_default_str();
  cn->add_option("--name", cn_name)->capture_default_str();

  // depth-sweep
  auto* ds = app.add_subcommand("depth-sweep", "Test score over first/second layer depths");
  DataFlags ds_data;
  ds_data.attach(ds);
  std::vector<int> ds_first{2}, ds_second{0, 1, 2, 3, 4, 5, 6, 8, 10};
  std::size_t ds_runs = 10, ds_leaf = 1;
  std::string ds_name = "depth_sweep";
  ds->add_option("--first-depths", ds_first)->delimiter(',');
  ds->add_option("--second-depths", ds_second)->delimiter(',');
  ds->add_option("--min-samples-leaf", ds_leaf)->capture_default_str();
  ds->add_option("--runs", ds_runs)->capture_default_str();
  ds->add_option("--name", ds_name)->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  std::string run_config;
  run->alias("run-experiment");
  run->add_option("config", run_config, "Experiment JSON")->required();

  // plotdata
  auto* plot = app.add_subcommand("plotdata", "Reshape a result CSV between wide and long");
  std::string plot_in, plot_out;
  std::vector<std::string> plot_ids, plot_values;
  bool plot_pivot = false;
  plot->add_option("input", plot_in, "Result CSV")->required();
  plot->add_option("--id", plot_ids, "Id columns")->delimiter(',');
  plot->add_option("--values", plot_values, "Value columns (default: all others)")
      ->delimiter(',');
  plot->add_flag("--pivot", plot_pivot, "Long to wide instead of wide to long");
  plot->add_option("--out", plot_out, "Output CSV under --out-dir ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      std::ostringstream text;
      if (gen_coloring.rfind("random:", 0) == 0) {
        const RandomChessboardSpec spec(gen_kstar, gen_dim, gen_p,
                                        std::stoull(gen_coloring.substr(7)));
        write_samples_csv(text, sample(spec, gen_n, g.seed).samples);
      } else if (gen_coloring.rfind("file:", 0) == 0) {
        const std::string path = gen_coloring.substr(5);
        std::ifstream in(path);
        if (!in) throw DataError("cannot open '" + path + "'");
        const ChessboardSpec spec(gen_kstar, gen_dim, gen_p, parse_coloring(in));
        write_samples_csv(text, sample(spec, gen_n, g.seed));
      } else if (gen_coloring == "balanced") {
        write_samples_csv(text, sample(ChessboardSpec::balanced(gen_kstar, gen_dim, gen_p),
                                       gen_n, g.seed));
      } else {
        throw DomainError("unknown coloring '" + gen_coloring + "'");
      }
      const std::string out = under(g, gen_out.empty() ? "chessboard.csv" : gen_out);
      if (out == "-") {
        std::cout << text.str();
      } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw DataError("cannot write '" + out + "'");
        f << text.str();
        std::cout << out << '\n';
      }
    } else if (*fit) {
      const ChessboardSpec spec = ChessboardSpec::balanced(fit_kstar, fit_dim, fit_p);
      const SampleSet data = sample(spec, fit_n, g.seed);
      ShallowOptions options;
      options.exclude_empty = !fit_keep_empty;
      const auto net = ShallowTreeNetwork::fit(fit_k, static_cast<std::size_t>(fit_dim),
                                               parse_schedule(fit_schedule), data, options);
      const CenteredTree tree = CenteredTree::fit(fit_k, static_cast<std::size_t>(fit_dim), data);
      json groups = json::array();
      for (std::size_t i = 0; i < net.group_count(); ++i)
        groups.push_back({{"group", i}, {"size", net.group_size(i)}, {"mean", net.group_mean(i)}});
      const json summary{{"k", fit_k},
                         {"k_star", fit_kstar},
                         {"dim", fit_dim},
                         {"p", fit_p},
                         {"n", fit_n},
                         {"seed", g.seed},
                         {"schedule", format_schedule(net.schedule())},
                         {"groups", groups},
                         {"network_risk", exact_conditional_risk(net, spec.field())},
                         {"single_tree_risk", exact_conditional_risk(tree, spec.field())}};
      std::cout << summary.dump(2) << '\n';
    } else if (*bounds) {
      json config{{"experiment", "bounds_sweep"}, {"name", b_name},
                  {"regime", b_regime},          {"k", b_k},
                  {"k_star", b_kstar},           {"dim", b_dim},
                  {"p", b_p},                    {"n_grid", b_grid},
                  {"repetitions", b_reps},       {"schedule", b_schedule},
                  {"seed", g.seed},              {"jobs", g.jobs}};
      if (b_black > 0) config["n_black"] = b_black;
      const ExperimentResult result = run_experiment(config, g.out_dir);
      if (b_out.empty()) {
        print_result(result, g.out_dir);
      } else {
        std::ifstream in(std::filesystem::path(g.out_dir) / result.files.front());
        write_or_print(read_csv(in), under(g, b_out));
      }
    } else if (*l2) {
      const ChessboardSpec spec = ChessboardSpec::balanced(l2_kstar, l2_dim, l2_p);
      const ScheduleSearch search = lemma2_schedule_search(spec.field(), l2_k, l2_max, l2_budget);
      CsvTable table;
      table.header = {"schedule", "length", "risk"};
      for (const auto& row : search.table)
        table.add_row({format_schedule(row.schedule), std::to_string(row.schedule.size()),
                       format_double(row.risk)});
      if (!l2_out.empty()) write_or_print(table, under(g, l2_out));
      std::cout << json{{"best_schedule", format_schedule(search.best)},
                        {"best_risk", search.best_risk},
                        {"schedules", search.table.size()}}
                       .dump(2)
                << '\n';
    } else if (*l1) {
      const Lemma1Check r = lemma1_check(l1_kstar, l1_draws, g.seed, l1_dim, g.jobs);
      std::cout << json{{"k_star", r.k_star},
                        {"dim", r.dim},
                        {"draws", r.draws},
                        {"mean_shallow_risk", r.mean_shallow_risk},
                        {"standard_error", r.standard_error},
                        {"lower_bound", r.bound},
                        {"max_single_tree_risk", r.max_single_tree_risk},
                        {"holds", r.holds}}
                       .dump(2)
                << '\n';
      if (!r.holds) return kData;
    } else if (*bin) {
      const BinomialMoments m = binomial_oracles(bin_n, bin_p);
      CsvTable table;
      table.header = {"check", "lhs", "rhs", "holds"};
      bool all = true;
      for (const auto& c : m.checks()) {
        table.add_row({c.name, format_double(c.lhs), format_double(c.rhs), c.holds ? "1" : "0"});
        all = all && c.holds;
      }
      write_or_print(table, under(g, bin_out.empty() ? "-" : bin_out));
      if (!all) return kData;
    } else if (*casc) {
      const CascadeConfig config =
          casc_config.empty()
              ? (casc_preset == "default_df" ? CascadeConfig::default_df()
                                             : CascadeConfig::light_df())
              : CascadeConfig::from_json(read_json_file(casc_config));
      const Dataset data = DataSourceConfig::from_json(casc_data.to_json()).materialize(g.seed);
      const Matrix train = data.train(), val = data.validation(), test = data.test();
      const CascadeModel model = fit_cascade(config, train.view(), val.view(), data.task,
                                             data.n_classes(), g.seed, g.jobs);
      json layers = json::array();
      for (std::size_t t = 1; t <= model.layer_count(); ++t)
        layers.push_back({{"layer", t},
                          {"input_width", model.input_width(t)},
                          {"validation_score", model.validation_scores()[t - 1]},
                          {"test_score", model.score_at_layer(t, test.view())}});
      json summary{{"config", config.to_json()},
                   {"best_layer", model.best_layer()},
                   {"test_score", model.score_at_layer(model.best_layer(), test.view())},
                   {"layers", layers}};
      if (casc_flatten) {
        const Forest flat = flatten_as_rf(config, train.view(), data.task, data.n_classes(),
                                          g.seed, g.jobs);
        summary["flat_rf_test_score"] = score_forest(flat, test.view());
      }
      std::cout << summary.dump(2) << '\n';
    } else if (*sub) {
      const json cascade = sub_config.empty() ? json{{"preset", sub_preset}}
                                              : read_json_file(sub_config);
      const json config{{"experiment", "cascade_submodels"}, {"name", sub_name},
                        {"data", sub_data.to_json()},      {"cascade", cascade},
                        {"max_layers", sub_layers},        {"runs", sub_runs},
                        {"seed", g.seed},                  {"jobs", g.jobs}};
      print_result(run_experiment(config, g.out_dir), g.out_dir);
    } else if (*cn) {
      const json config{{"experiment", "cart_network"}, {"name", cn_name},
                        {"data", cn_data.to_json()},    {"first_depth", cn_first},
                        {"second_depth", cn_second},    {"min_samples_leaf", cn_leaf},
                        {"runs", cn_runs},              {"seed", g.seed},
                        {"jobs", g.jobs}};
      print_result(run_experiment(config, g.out_dir), g.out_dir);
    } else if (*ds) {
      const json config{{"experiment", "depth_sweep"}, {"name", ds_name},
                        {"data", ds_data.to_json()},   {"first_depths", ds_first},
                        {"second_depths", ds_second},  {"min_samples_leaf", ds_leaf},
                        {"runs", ds_runs},             {"seed", g.seed},
                        {"jobs", g.jobs}};
      print_result(run_experiment(config, g.out_dir), g.out_dir);
    } else if (*run) {
      json config = read_json_file(run_config);
      // Command line --seed/--jobs only fill in what the file leaves open.
      if (config.is_object() && !config.contains("seed")) config["seed"] = g.seed;
      if (config.is_object() && !config.contains("jobs")) config["jobs"] = g.jobs;
      print_result(run_experiment(config, g.out_dir), g.out_dir);
    } else if (*plot) {
      std::ifstream in(plot_in);
      if (!in) throw DataError("cannot open '" + plot_in + "'");
      const CsvTable input = read_csv(in);
      std::vector<std::string> ids = plot_ids;
      if (ids.empty() && !input.header.empty()) ids.push_back(input.header.front());
      const CsvTable output = plot_pivot ? pivot(input, ids) : melt(input, ids, plot_values);
      write_or_print(output, under(g, plot_out.empty() ? "-" : plot_out));
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "xlab: " << e.what() << '\n';
    return kBudget;
  } catch (const DomainError& e) {
    std::cerr << "xlab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "xlab: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "xlab: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "xlab: " << e.what() << '\n';
    return kData;
  }
  return kOk;
}
