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
#include "rttape/scoring.h"

namespace rttape {
namespace {

void BM_TokenizeIntl(benchmark::State& state) {
  const auto lines = bench::SyntheticLines(2000, 7);
  std::size_t bytes = 0;
  for (const auto& l : lines) bytes += l.size();
  for (auto _ : state) {
    for (const auto& l : lines) benchmark::DoNotOptimize(TokenizeIntl(l));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lines.size()));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_TokenizeIntl);

void BM_CorpusBleu(benchmark::State& state) {
  const auto refs = bench::SyntheticLines(static_cast<std::size_t>(state.range(0)), 3);
  const auto hyps = bench::Perturbed(refs, 4);
  const BleuConfig cfg{"en", "de", "bench"};
  const auto jobs = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(CorpusBleu(hyps, refs, cfg, jobs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CorpusBleu)->Args({3000, 1})->Args({3000, 4})->Args({20000, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rttape
