// Copyright 2026 The byzrank Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "byzrank/kemeny.h"
#include "byzrank/ranking.h"
#include "byzrank/scenarios.h"
#include "byzrank/simnet.h"

namespace byzrank {
namespace {

PreferenceProfile RandomProfile(int m, int voters, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return PreferenceProfile(m, RandomRankings(rng, m, voters));
}

void BM_KendallTau(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const std::vector<Ranking> rs = RandomRankings(rng, m, 2);
  for (auto _ : state) benchmark::DoNotOptimize(KendallTau(rs[0], rs[1]));
}
BENCHMARK(BM_KendallTau)->RangeMultiplier(4)->Range(4, 1024);

void BM_KendallTauFast(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  const std::vector<Ranking> rs = RandomRankings(rng, m, 2);
  for (auto _ : state) benchmark::DoNotOptimize(KendallTauFast(rs[0], rs[1]));
}
BENCHMARK(BM_KendallTauFast)->RangeMultiplier(4)->Range(4, 1024);

void BM_KemenyExact(benchmark::State& state) {
  const PreferenceProfile profile =
      RandomProfile(static_cast<int>(state.range(0)), 9, 2);
  for (auto _ : state) benchmark::DoNotOptimize(KemenyExact(profile, 1).cost);
}
BENCHMARK(BM_KemenyExact)->DenseRange(4, 16, 2)->Unit(benchmark::kMillisecond);

void BM_KemenyBrute(benchmark::State& state) {
  const PreferenceProfile profile =
      RandomProfile(static_cast<int>(state.range(0)), 9, 2);
  for (auto _ : state) benchmark::DoNotOptimize(KemenyBrute(profile).cost);
}
BENCHMARK(BM_KemenyBrute)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);

void BM_RunSync(benchmark::State& state) {
  const auto protocol = static_cast<ProtocolKind>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const ProtocolConfig cfg = ProtocolConfig::Make(n, (n - 1) / 3, 5);
  const RunSpec spec = MakeRandomRunSpec(protocol, cfg,
                                         StrategyKind::kEquivocate, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Execute(spec).stats.messages_total);
  }
  state.SetLabel(ToString(protocol));
}
BENCHMARK(BM_RunSync)
    ->ArgsProduct({{0, 1, 2}, {4, 13, 31}})
    ->Unit(benchmark::kMicrosecond);

void BM_GridSearch(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(GridSearch(10 * t, t, GridCase::kC231).points);
  }
}
BENCHMARK(BM_GridSearch)->Arg(2)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace byzrank

BENCHMARK_MAIN();
