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

#ifndef RTTAPE_PIPELINE_H_
#define RTTAPE_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rttape/backends.h"
#include "rttape/corpus.h"
#include "rttape/testset.h"

namespace rttape {

// A natural target-language sentence and its round-trip translation.
struct RttPair {
  std::string original;
  std::string round_trip;
  bool operator==(const RttPair&) const = default;
};

struct RttOptions {
  FilterConfig filter;
  // Apply the length filter to the round trip as well as the original.
  bool filter_round_trip = true;
  TranslateOptions translate;
  // Lines translated per pipeline step; bounds memory on large corpora.
  std::size_t chunk_lines = 1 << 16;
};

struct RttReport {
  std::uint64_t read = 0;
  std::uint64_t emitted = 0;
  FilterReport original_filter;
  FilterReport round_trip_filter;
  nlohmann::json ToJson() const;
};

// Called once per emitted pair, in corpus order, with the pivot-language
// text in between.
using RttSink = std::function<void(const RttPair& pair, std::string_view pivot)>;
// Produces the next corpus line; returns false at end.
using LineSource = std::function<bool(std::string& line)>;

// round_trip = x_to_y(y_to_x(y)) for every y passing the filter; pairs whose
// round trip fails the filter are dropped whole. Backend errors propagate
// as BackendError with corpus-relative line ranges.
RttReport GenerateRtt(const LineSource& corpus, const BackendSpec& y_to_x,
                      const BackendSpec& x_to_y, const RttOptions& options,
                      const RttSink& sink);

std::vector<RttPair> GenerateRtt(std::span<const std::string> corpus,
                                 const BackendSpec& y_to_x, const BackendSpec& x_to_y,
                                 const RttOptions& options, RttReport* report = nullptr);

// kNormal trains RTT(y) -> y, kReverse trains y -> RTT(y).
enum class PairDirection { kNormal, kReverse };

SentencePair ToTrainingPair(const RttPair& pair, PairDirection direction);

// Orients each pair and drops those failing the bitext filter.
std::vector<SentencePair> MakeTrainingPairs(std::span<const RttPair> pairs,
                                            PairDirection direction,
                                            const FilterConfig& cfg,
                                            FilterReport* report = nullptr);

enum class ApeScope { kAll, kTargetOriginalOnly };

struct ApeMode {
  ApeScope scope = ApeScope::kAll;
  int iterations = 1;
  void Validate() const;
};

// Lines whose bytes changed in each iteration.
struct ChangeReport {
  std::size_t total_lines = 0;
  std::size_t in_scope = 0;
  std::vector<std::size_t> changed_per_iteration;
  nlohmann::json ToJson() const;
};

struct ApeResult {
  std::vector<std::string> output;
  ChangeReport report;
};

// Runs the post-editor `mode.iterations` times over the in-scope lines (all,
// or the target-original half). Out-of-scope lines are copied unchanged.
// Throws DataError if a half index is out of range.
ApeResult ApplyApe(std::span<const std::string> hyp, const BackendSpec& ape,
                   const SplitHalves& halves, const ApeMode& mode,
                   const TranslateOptions& options = {});

}  // namespace rttape

#endif  // RTTAPE_PIPELINE_H_
