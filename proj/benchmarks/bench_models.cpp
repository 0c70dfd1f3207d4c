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

#include <benchmark/benchmark.h>

#include "treenet/cart.hpp"
#include "treenet/centered_tree.hpp"
#include "treenet/chessboard.hpp"
#include "treenet/forest.hpp"
#include "treenet/shallow_network.hpp"

namespace {

using namespace treenet;

const ChessboardSpec& board() {
  static const ChessboardSpec spec = ChessboardSpec::balanced(6, 2, 0.8);
  return spec;
}

void BM_Sample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(board(), n, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(1024)->Arg(65536);

void BM_CenteredTreeFit(benchmark::State& state) {
  const auto data = sample(board(), static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(CenteredTree::fit(6, 2, data));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CenteredTreeFit)->Arg(1024)->Arg(65536);

void BM_ShallowNetworkFit(benchmark::State& state) {
  const auto data = sample(board(), static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ShallowTreeNetwork::fit(6, 2, {SplitDirective::new_feature()}, data));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ShallowNetworkFit)->Arg(1024)->Arg(65536);

void BM_CartFit(benchmark::State& state) {
  const auto data = sample(board(), static_cast<std::size_t>(state.range(0)), 1);
  const DataView view{data.x, data.y, 2};
  for (auto _ : state) benchmark::DoNotOptimize(fit_cart(view, CartParams{.max_depth = 8}, 1));
}
BENCHMARK(BM_CartFit)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ForestFit(benchmark::State& state) {
  const auto data = sample(board(), 5000, 1);
  const DataView view{data.x, data.y, 2};
  const ForestSpec spec{.kind = state.range(0) ? ForestKind::completely_random
                                               : ForestKind::breiman,
                        .n_trees = 50,
                        .max_depth = 30};
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_forest(spec, view, Task::classification, 2, 1));
}
BENCHMARK(BM_ForestFit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
