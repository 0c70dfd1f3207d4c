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

// Acceptance suite. Prints one PASS/FAIL line per criterion on stdout and
// the supporting numbers on stderr. Exit status is non-zero if any selected
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treenet/binomial.hpp"
#include "treenet/bounds.hpp"
#include "treenet/cascade.hpp"
#include "treenet/chessboard.hpp"
#include "treenet/dataset.hpp"
#include "treenet/experiment.hpp"
#include "treenet/forest.hpp"
#include "treenet/risk.hpp"

namespace {

using namespace treenet;
namespace fs = std::filesystem;

constexpr std::uint64_t kSeed = 2024;
unsigned g_jobs = 1;

struct Outcome {
  bool pass = true;
  std::ostringstream log;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    log << (ok ? "    ok   " : "    FAIL ") << what << '\n';
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::vector<std::uint64_t> kSweepN{16, 32, 64, 128, 256, 512, 1024};

// MC mean within [lower - 3 SE, upper + 3 SE]; the lower side is skipped when
// the bound is not asserted at this n.
void sandwich(Outcome& out, const std::string& label, const RiskEstimate& e,
              const BoundReport& b) {
  const double slack = 3 * e.standard_error;
  std::ostringstream what;
  what << label << ": mc " << num(e.mean) << " (se " << num(e.standard_error) << ") in ["
       << num(b.lower) << (b.lower_valid ? "" : " (not asserted)") << ", " << num(b.upper)
       << "]";
  const bool low = !b.lower_valid || e.mean >= b.lower - slack;
  const bool high = e.mean <= b.upper + slack;
  out.require(low && high, what.str());
}

Outcome criterion1() {
  Outcome out;
  const auto field = ChessboardSpec::balanced(4, 2, 0.8).field();
  for (std::size_t i = 0; i < kSweepN.size(); ++i) {
    const std::uint64_t n = kSweepN[i];
    const auto tree = mc_risk(ModelFamily::single_tree(2), field, n, 20000, kSeed + i, g_jobs);
    sandwich(out, "single k=2 n=" + std::to_string(n), tree, bound_single_tree_small_k(2, n, 0.8));
    const auto net = mc_risk(ModelFamily::shallow(2, {SplitDirective::new_feature()}), field, n,
                             20000, kSeed + 100 + i, g_jobs);
    sandwich(out, "shallow k=2 n=" + std::to_string(n), net, bound_shallow_small_k(2, n, 0.8));
  }
  return out;
}

Outcome criterion2() {
  Outcome out;
  const auto field = ChessboardSpec::balanced(4, 2, 0.8).field();
  for (int k : {4, 6}) {
    for (std::size_t i = 0; i < kSweepN.size(); ++i) {
      const std::uint64_t n = kSweepN[i];
      const std::string at = " k=" + std::to_string(k) + " n=" + std::to_string(n);
      const auto tree = mc_risk(ModelFamily::single_tree(k), field, n, 20000, kSeed + 10 * k + i, g_jobs);
      sandwich(out, "single" + at, tree, bound_single_tree_large_k(k, n, 0.8));
      const auto net = mc_risk(ModelFamily::shallow(k, {SplitDirective::new_feature()}), field, n,
                               20000, kSeed + 100 + 10 * k + i, g_jobs);
      sandwich(out, "shallow" + at, net, bound_shallow_large_k(k, 4, 8, n, 0.8));
    }
  }
  return out;
}

Outcome criterion3() {
  Outcome out;
  const auto field = ChessboardSpec::balanced(4, 2, 0.8).field();
  const std::vector<std::uint64_t> grid{16, 32, 64, 128, 256, 512, 1024, 2048, 4096, 8192, 10000};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t reps = grid[i] <= 1024 ? 20000 : 4000;
    const auto e = mc_risk(ModelFamily::shallow(2, {SplitDirective::new_feature()}), field,
                           grid[i], reps, kSeed + 300 + i, g_jobs);
    out.require(e.mean >= 0.09 - 3 * e.standard_error,
                "n=" + std::to_string(grid[i]) + ": mc " + num(e.mean) + " (se " +
                    num(e.standard_error) + ") >= 0.09 - 3 se");
  }
  return out;
}

Outcome criterion4() {
  Outcome out;
  const auto field = ChessboardSpec::balanced(4, 2, 0.8).field();
  const auto tree = mc_risk(ModelFamily::single_tree(4), field, 4096, 5000, kSeed + 400, g_jobs);
  const auto net = mc_risk(ModelFamily::shallow(4, {SplitDirective::new_feature()}), field, 4096,
                           5000, kSeed + 401, g_jobs);
  const double ratio = tree.mean / net.mean;
  out.require(ratio >= 2, "single " + num(tree.mean) + " / shallow " + num(net.mean) + " = " +
                              num(ratio) + " >= 2");
  out.require(net.mean + 3 * net.standard_error < tree.mean - 3 * tree.standard_error,
              "3 se intervals disjoint (se " + num(net.standard_error) + ", " +
                  num(tree.standard_error) + ")");
  return out;
}

Outcome criterion5() {
  Outcome out;
  for (int k_star : {4, 6}) {
    const auto field = ChessboardSpec::balanced(k_star, 2, 0.8).field();
    const std::string at = "k*=" + std::to_string(k_star);
    const auto low = lemma2_schedule_search(field, 2, k_star);
    const bool raw_only = std::all_of(low.best.begin(), low.best.end(),
                                      [](const SplitDirective& d) { return d.is_raw(); });
    out.require(low.best_risk == 0.0 && raw_only && low.best.size() == std::size_t(k_star),
                at + " k=2: best " + format_schedule(low.best) + " risk " + num(low.best_risk));
    const auto high = lemma2_schedule_search(field, k_star, 1);
    out.require(high.best == Schedule{SplitDirective::new_feature()} && high.best_risk == 0.0,
                at + " k=" + std::to_string(k_star) + ": best " + format_schedule(high.best) +
                    " risk " + num(high.best_risk));
  }
  return out;
}

Outcome criterion6() {
  Outcome out;
  for (int k_star : {2, 4}) {
    const auto c = lemma1_check(k_star, 10000, kSeed + k_star, 2, g_jobs);
    out.require(c.mean_shallow_risk >= c.bound,
                "k*=" + std::to_string(k_star) + ": mean " + num(c.mean_shallow_risk) + " (se " +
                    num(c.standard_error) + ") >= bound " + num(c.bound));
    out.require(c.max_single_tree_risk == 0.0,
                "k*=" + std::to_string(k_star) + ": single tree risk " + num(c.max_single_tree_risk));
  }
  return out;
}

Outcome criterion7() {
  Outcome out;
  const double grid[] = {0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  std::map<std::string, int> failures;
  std::map<std::string, std::string> first;
  int total = 0;
  for (std::uint64_t n = 1; n <= 200; ++n)
    for (double p : grid)
      for (const auto& c : binomial_oracles(n, p).checks()) {
        ++total;
        // "(v) k=3" and friends are grouped as "(v)".
        const std::string family = c.name.substr(0, c.name.find(" k="));
        failures[family] += !c.holds;
        if (!c.holds && !first.count(family))
          first[family] = " first at n=" + std::to_string(n) + " p=" + num(p) + ": " +
                          num(c.lhs) + " > " + num(c.rhs);
      }
  for (const auto& [family, count] : failures)
    out.require(count == 0, "binomial " + family + ": " + std::to_string(count) + " violations" +
                                (count ? first[family] : ""));

  const std::pair<std::uint64_t, double> exact_cases[] = {{10, 0.5}, {50, 0.8}};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto [n, p] = exact_cases[i];
    const auto e = mc_risk(ModelFamily::single_tree(0), DiscretizedSpec(0, 2, {p}).field(), n,
                           100000, kSeed + 700 + i, g_jobs);
    const double target = p * (1 - p) / n;
    out.require(std::abs(e.mean - target) <= 3 * e.standard_error,
                "uniform labels k=0 n=" + std::to_string(n) + " p=" + num(p) + ": mc " +
                    num(e.mean) + " vs " + num(target) + " (se " + num(e.standard_error) + ")");
  }
  for (int k : {1, 2, 3})
    for (std::uint64_t n : {10u, 50u, 200u}) {
      const auto e = mc_risk(ModelFamily::single_tree(k), DiscretizedSpec(0, 2, {0.8}).field(), n,
                             20000, kSeed + 710 + 10 * k + n, g_jobs);
      sandwich(out, "uniform labels k=" + std::to_string(k) + " n=" + std::to_string(n), e,
               bound_uniform_labels(k, n, 0.8));
    }
  return out;
}

CartNetworkConfig first_split_config() {
  CartNetworkConfig c;
  c.data.k_star = 6;
  c.data.dim = 2;
  c.data.n = 5000;
  c.first_depth = 6;
  c.runs = 10;
  c.seed = kSeed;
  c.jobs = g_jobs;
  return c;
}

Outcome criterion8() {
  Outcome out;
  const CsvTable t = cart_network_runs(first_split_config());
  const std::size_t col = t.column("root_on_augmented");
  const long hits = std::count_if(t.rows.begin(), t.rows.end(),
                                  [col](const auto& row) { return row[col] == "1"; });
  out.require(hits >= 9, "root split on augmented feature in " + std::to_string(hits) + "/10 seeds");
  return out;
}

Outcome criterion9() {
  Outcome out;
  const ForestSpec spec{.n_trees = 25};
  for (int which = 0; which < 3; ++which) {
    SampleSet samples;
    std::size_t classes = 2;
    const std::uint64_t seed = kSeed + 900 + which;
    if (which == 0) {
      samples = sample(ChessboardSpec::balanced(4, 2, 0.8), 1200, seed);
    } else if (which == 1) {
      Rng rng(seed);
      samples = SampleSet(5);
      for (int i = 0; i < 1200; ++i) {
        std::vector<double> x(5);
        for (auto& v : x) v = rng.uniform();
        samples.push_back(x, x[0] + x[1] > 1.0 ? 1.0 : 0.0);
      }
    } else {
      Rng rng(seed);
      samples = sample(DiscretizedSpec::uniform_draw(6, 3, rng), 1200, seed);
    }
    const Dataset data = dataset_from_samples(samples, Task::classification, SplitFractions{}, seed);
    const Matrix train = data.train(), validation = data.validation(), test = data.test();
    CascadeConfig config;
    config.forests = {spec};
    const auto cascade = fit_cascade(config, train.view(), validation.view(),
                                     Task::classification, classes, seed, g_jobs);
    const Forest forest = fit_forest(spec, train.view(), Task::classification, classes, seed, g_jobs);
    std::size_t equal = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      const auto row = test.view().row(i);
      equal += cascade.predict(row) == forest.predict(row);
    }
    out.require(equal == test.size(), "dataset " + std::to_string(which + 1) + ": " +
                                          std::to_string(equal) + "/" +
                                          std::to_string(test.size()) + " bit-identical");
  }
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion10() {
  Outcome out;
  const fs::path root = fs::temp_directory_path() / "treenet_acceptance_repro";
  fs::remove_all(root);
  const nlohmann::json configs[] = {
      {{"experiment", "bounds_sweep"}, {"name", "small_k_shallow"}, {"regime", "shallow_small_k"},
       {"k", 2}, {"k_star", 4}, {"p", 0.8}, {"n_grid", kSweepN}, {"repetitions", 2000},
       {"seed", kSeed}},
      {{"experiment", "bounds_sweep"}, {"name", "large_k_single"}, {"regime", "single_tree_large_k"},
       {"k", 4}, {"k_star", 4}, {"p", 0.8}, {"n_grid", kSweepN}, {"repetitions", 2000},
       {"seed", kSeed}},
      nlohmann::json(first_split_config().to_json()),
      {{"experiment", "lemma_checks"}, {"lemma1_draws", 1000}, {"seed", kSeed}},
  };
  for (const auto& base : configs) {
    nlohmann::json serial = base, threaded = base;
    serial["jobs"] = 1;
    threaded["jobs"] = std::max(2u, g_jobs);
    const auto a = run_experiment(serial, (root / "a").string());
    const auto b = run_experiment(serial, (root / "b").string());
    const auto c = run_experiment(threaded, (root / "c").string());
    for (const auto& f : a.files) {
      const std::string ref = slurp(root / "a" / f);
      out.require(!ref.empty() && ref == slurp(root / "b" / f) && ref == slurp(root / "c" / f),
                  f + ": identical across reruns and job counts (" + std::to_string(ref.size()) +
                      " bytes)");
    }
  }
  fs::remove_all(root);
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treenet acceptance suite"};
  std::vector<int> only;
  app.add_option("--only", only, "run only these criteria")->check(CLI::Range(1, 10));
  app.add_option("--jobs", g_jobs, "worker threads (0 = all cores)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "bound sandwich, small k", criterion1},
      {2, "bound sandwich, large k", criterion2},
      {3, "bias floor of the shallow network", criterion3},
      {4, "variance reduction at k = k*", criterion4},
      {5, "infinite-sample schedule search", criterion5},
      {6, "random discretized boards", criterion6},
      {7, "binomial oracle suite and uniform labels", criterion7},
      {8, "first split on the new feature", criterion8},
      {9, "degenerate cascade equals forest", criterion9},
      {10, "byte-identical reruns", criterion10},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << outcome.log.str();
    std::cout << "criterion " << c.id << ": " << (outcome.pass ? "PASS" : "FAIL") << "  ("
              << c.title << ", " << num(seconds) << " s)" << std::endl;
    failed += !outcome.pass;
  }
  return failed == 0 ? 0 : 1;
}
