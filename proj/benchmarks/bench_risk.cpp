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

#include "treenet/binomial.hpp"
#include "treenet/chessboard.hpp"
#include "treenet/risk.hpp"

namespace {

using namespace treenet;

void BM_McRisk(benchmark::State& state) {
  const auto field = ChessboardSpec::balanced(4, 2, 0.8).field();
  const int k = static_cast<int>(state.range(0));
  const auto family = ModelFamily::shallow(k, {SplitDirective::new_feature()});
  for (auto _ : state) benchmark::DoNotOptimize(mc_risk(family, field, 1024, 100, 1));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_McRisk)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_ScheduleSearch(benchmark::State& state) {
  const auto field = ChessboardSpec::balanced(4, 2, 0.8).field();
  for (auto _ : state) benchmark::DoNotOptimize(lemma2_schedule_search(field, 2, 4));
}
BENCHMARK(BM_ScheduleSearch)->Unit(benchmark::kMillisecond);

void BM_BinomialOracles(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(binomial_oracles(n, 0.5));
}
BENCHMARK(BM_BinomialOracles)->Arg(200)->Arg(100000);

}  // namespace
