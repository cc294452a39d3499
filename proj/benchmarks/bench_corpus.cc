// Copyright 2026 The rttape Authors. All Rights Reserved.
//
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

#include "bench_util.h"
#include "rttape/corpus.h"

namespace rttape {
namespace {

void BM_Dedup(benchmark::State& state) {
  const auto lines = bench::SyntheticLines(static_cast<std::size_t>(state.range(0)), 11, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(Dedup(lines));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Dedup)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MonoFilter(benchmark::State& state) {
  const auto lines = bench::SyntheticLines(100000, 12);
  const FilterConfig cfg;
  const auto jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ClassifyMonoBatch(lines, cfg, jobs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lines.size()));
}
BENCHMARK(BM_MonoFilter)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DedupThenFilter(benchmark::State& state) {
  const auto lines = bench::SyntheticLines(100000, 13, 0.3);
  const FilterConfig cfg;
  for (auto _ : state) {
    Deduper d;
    std::size_t kept = 0;
    for (const auto& l : lines) {
      if (d.Insert(l) && ClassifyMono(l, cfg) == MonoVerdict::kKeep) ++kept;
    }
    benchmark::DoNotOptimize(kept);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lines.size()));
}
BENCHMARK(BM_DedupThenFilter)->Unit(benchmark::kMillisecond);

void BM_BitextFilter(benchmark::State& state) {
  const auto src = bench::SyntheticLines(50000, 14);
  const auto tgt = bench::Perturbed(src, 15);
  const FilterConfig cfg;
  for (auto _ : state) {
    std::size_t kept = 0;
    for (std::size_t i = 0; i < src.size(); ++i) {
      kept += ClassifyBitext({src[i], tgt[i]}, cfg) == BitextVerdict::kKeep;
    }
    benchmark::DoNotOptimize(kept);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(src.size()));
}
BENCHMARK(BM_BitextFilter)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  const auto lines = bench::SyntheticLines(100000, 16);
  for (auto _ : state) benchmark::DoNotOptimize(SampleLines(lines, 1000, 5));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lines.size()));
}
BENCHMARK(BM_Sample)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rttape
