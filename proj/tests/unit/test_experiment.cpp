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

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "treenet/csv.hpp"
#include "treenet/error.hpp"
#include "treenet/experiment.hpp"

namespace treenet {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class ExperimentDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("treenet_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(BoundsSweep, OneRowWithAllConstants) {
  BoundsSweepConfig c;
  c.regime = Regime::shallow_large_k;
  c.k = 4;
  c.n_grid = {256};
  c.repetitions = 1;
  const CsvTable t = bounds_sweep(c);
  ASSERT_EQ(t.rows.size(), 1u);
  for (const char* col : {"n", "mc_mean", "mc_se", "lower", "upper", "lower_valid", "k",
                          "p", "bias", "empty_cell_mass", "k_star", "n_black", "rho_kp",
                          "epsilon_nkp", "p_bar_B_sq"})
    EXPECT_NO_THROW(t.column(col)) << col;
  EXPECT_EQ(t.rows[0][t.column("n")], "256");
  EXPECT_EQ(t.rows[0][t.column("model")], "shallow");
}

TEST(BoundsSweep, Validation) {
  BoundsSweepConfig c;
  c.n_grid = {32, 16};
  EXPECT_THROW(c.validate(), DomainError);
  c.n_grid = {16};
  c.repetitions = 0;
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_THROW(BoundsSweepConfig::from_json(json{{"experiment", "bounds_sweep"}, {"reps", 3}}),
               DomainError);
}

TEST(CascadeSubmodels, CountsSumToRunsPerColumn) {
  CascadeSubmodelsConfig c;
  c.data.k_star = 6;
  c.data.n = 1500;
  c.cascade = CascadeConfig::light_df();
  for (auto& f : c.cascade.forests) {
    f.n_trees = 8;
    f.max_depth = 8;
  }
  c.runs = 10;
  const SubmodelTables tables = cascade_submodels(c);
  std::map<std::string, long> per_column;
  const std::size_t ml = tables.counts.column("max_layers");
  const std::size_t opt = tables.counts.column("optimal_layer");
  const std::size_t count = tables.counts.column("count");
  for (const auto& row : tables.counts.rows) {
    EXPECT_LE(std::stoul(row[opt]), std::stoul(row[ml]));
    per_column[row[ml]] += std::stol(row[count]);
  }
  ASSERT_EQ(per_column.size(), 8u);
  for (const auto& [column, total] : per_column) EXPECT_EQ(total, 10) << "max_layers=" << column;
  EXPECT_EQ(tables.counts.rows.size(), 8u * 9 / 2);
  EXPECT_FALSE(tables.scores.rows.empty());
}

TEST(DepthSweep, SecondLayerCompensatesShallowEncoder) {
  DepthSweepConfig c;
  c.data.k_star = 6;
  c.data.n = 5000;
  c.first_depths = {2};
  c.second_depths = {0, 10};
  c.runs = 10;
  const CsvTable t = depth_sweep(c);
  ASSERT_EQ(t.rows.size(), 20u);
  std::map<int, double> mean;
  for (const auto& row : t.rows)
    mean[std::stoi(row[t.column("second_depth")])] += std::stod(row[t.column("test_score")]) / 10;
  EXPECT_GT(mean[10], mean[0] + 0.05);
}

TEST(CartNetworkRuns, ReportColumns) {
  CartNetworkConfig c;
  c.data.n = 800;
  c.runs = 2;
  const CsvTable t = cart_network_runs(c);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][t.column("raw_dim")], "2");
  EXPECT_EQ(t.rows[0][t.column("augmented_dim")], "4");
  EXPECT_EQ(t.rows[1][t.column("seed")], "1");
}

TEST_F(ExperimentDir, WritesCsvAndManifest) {
  const json config = {{"experiment", "bounds_sweep"}, {"name", "tiny"}, {"n_grid", {16, 64}},
                       {"repetitions", 20}, {"seed", 5}};
  const ExperimentResult r = run_experiment(config, dir_.string());
  EXPECT_EQ(r.files, (std::vector<std::string>{"tiny.csv", "tiny.manifest.json"}));
  ASSERT_TRUE(fs::exists(dir_ / "tiny.csv"));
  const json manifest = json::parse(slurp(dir_ / "tiny.manifest.json"));
  EXPECT_EQ(manifest.at("experiment"), "bounds_sweep");
  EXPECT_EQ(manifest.at("seeds"), json({5, 6}));
  EXPECT_EQ(manifest.at("outputs"), json({"tiny.csv"}));
  EXPECT_TRUE(manifest.contains("git_describe"));
  // The echoed config is enough to rerun the experiment.
  const ExperimentResult again = run_experiment(manifest.at("config"), (dir_ / "rerun").string());
  EXPECT_EQ(slurp(dir_ / "tiny.csv"), slurp(dir_ / "rerun" / "tiny.csv"));
}

TEST_F(ExperimentDir, ByteIdenticalReruns) {
  const json configs[] = {
      {{"experiment", "bounds_sweep"}, {"regime", "shallow_small_k"}, {"n_grid", {32}},
       {"repetitions", 50}, {"seed", 1}, {"jobs", 2}},
      {{"experiment", "cart_network"}, {"data", {{"n", 600}}}, {"runs", 3}, {"seed", 4}},
      {{"experiment", "lemma_checks"}, {"lemma1_draws", 50}, {"lemma2", json::array()},
       {"binomial_n_max", 5}},
  };
  for (const auto& config : configs) {
    const auto a = run_experiment(config, (dir_ / "a").string());
    const auto b = run_experiment(config, (dir_ / "b").string());
    for (const auto& f : a.files) EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(ExperimentDir, Errors) {
  EXPECT_THROW(run_experiment(json{{"name", "x"}}, dir_.string()), DomainError);
  EXPECT_THROW(run_experiment(json{{"experiment", "nope"}}, dir_.string()), DomainError);
  const json missing = {{"experiment", "cart_network"},
                        {"data", {{"type", "csv"}, {"path", "/nonexistent.csv"}, {"label_column", "y"}}},
                        {"runs", 1}};
  EXPECT_THROW(run_experiment(missing, dir_.string()), DataError);
}

}  // namespace
}  // namespace treenet
