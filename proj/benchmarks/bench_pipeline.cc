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


#include <map>
#include <string>

#include <benchmark/benchmark.h>

#include "bench_util.h"
#include "rttape/backends.h"
#include "rttape/pipeline.h"
#include "rttape/unicode.h"

namespace rttape {
namespace {

ChannelConfig Lexicon(const std::vector<std::string>& lines, std::uint64_t seed) {
  ChannelConfig cfg;
  std::map<std::string, std::string> lex;
  for (const auto& l : lines) {
    for (auto w : unicode::SplitWhitespace(l)) {
      if (w.size() > 6) lex.emplace(w, std::string(w.substr(0, 5)));
    }
  }
  cfg.lexicon = std::move(lex);
  cfg.drop_prob = 0.05;
  cfg.swap_prob = 0.05;
  cfg.seed = seed;
  return cfg;
}

void BM_ChannelApply(benchmark::State& state) {
  const auto lines = bench::SyntheticLines(5000, 21);
  const ChannelConfig cfg = Lexicon(lines, 1);
  for (auto _ : state) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      benchmark::DoNotOptimize(ChannelApply(cfg, lines[i], i));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lines.size()));
}
BENCHMARK(BM_ChannelApply)->Unit(benchmark::kMillisecond);

void BM_GenerateRtt(benchmark::State& state) {
  const auto lines = bench::SyntheticLines(20000, 22);
  const auto y2x = BackendSpec::ToyChannel(Lexicon(lines, 2), "de", "en");
  ChannelConfig back;
  back.swap_prob = 0.05;
  back.seed = 3;
  const auto x2y = BackendSpec::ToyChannel(back, "en", "de");
  RttOptions opts;
  opts.translate.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(GenerateRtt(lines, y2x, x2y, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lines.size()));
}
BENCHMARK(BM_GenerateRtt)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rttape
