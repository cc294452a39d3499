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

#ifndef RTTAPE_ANALYSIS_H_
#define RTTAPE_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rttape/scoring.h"
#include "rttape/testset.h"

namespace rttape {

// Case-sensitive. kWhitespace splits on whitespace only; kIntl uses the
// scorer's international tokenizer.
enum class VocabTokenizer { kWhitespace, kIntl };

class VocabCounter {
 public:
  explicit VocabCounter(VocabTokenizer tokenizer = VocabTokenizer::kWhitespace)
      : tokenizer_(tokenizer) {}

  void Add(std::string_view line);
  std::size_t size() const { return tokens_.size(); }

 private:
  VocabTokenizer tokenizer_;
  std::unordered_set<std::string> tokens_;
};

std::size_t VocabSize(std::span<const std::string> lines,
                      VocabTokenizer tokenizer = VocabTokenizer::kWhitespace);

inline constexpr std::string_view kHalfFull = "full";
inline constexpr std::string_view kHalfSourceOriginal = "source_original";
inline constexpr std::string_view kHalfTargetOriginal = "target_original";

struct AnalysisReport {
  std::map<std::string, std::size_t> vocab_sizes;
  std::optional<BleuScore> rtt_bleu;
  // system label -> half ("full", "source_original", "target_original").
  // Halves with no segments are absent.
  std::map<std::string, std::map<std::string, BleuScore>> split_scores;
  // Segment counts per half and other provenance.
  nlohmann::json metadata = nlohmann::json::object();

  nlohmann::json ToJson() const;
  // Aligned plain-text rendering; split tables use orig-<lang> columns.
  std::string RenderTable() const;
};

// Round trips scored as hypotheses against the originals, with per-order
// precisions and both vocabulary sizes. Throws DataError on length mismatch.
AnalysisReport RttQualityReport(std::span<const std::string> originals,
                                std::span<const std::string> round_trips,
                                const BleuConfig& cfg,
                                VocabTokenizer tokenizer = VocabTokenizer::kWhitespace);

// Full-set and per-origin BLEU for each labeled system. Unknown-origin lines
// count toward the full set only.
AnalysisReport SplitScoreTable(
    const TestSet& ts, const std::vector<std::pair<std::string, std::vector<std::string>>>& hyps,
    const BleuConfig& cfg, unsigned jobs = 1);

// ---- Human evaluation ------------------------------------------------------

inline constexpr std::string_view kHumanEvalSchema = "rttape-humaneval/1";
inline constexpr std::string_view kFluencyPrompt =
    "How do you judge the overall naturalness of the utterance in terms of its "
    "grammatical correctness and fluency?";
inline constexpr std::string_view kAccuracyPrompt =
    "Does the statement factually contradict anything in the reference "
    "information?";

struct HumanEvalInput {
  std::string source;
  std::string output;
  std::string system_label;
};

// TSV with one row per (item, rater slot), rows shuffled by `seed`. The
// system label sits in a trailing internal column, outside the rater-facing
// ones.
std::string MakeHumanEvalTasks(std::span<const HumanEvalInput> items,
                               std::size_t raters_per_item, std::uint64_t seed);

struct HumanEvalItem {
  std::string item_id;
  std::string source;
  std::string output;
  std::string system_label;
  std::vector<int> fluency_ratings;     // 1..5
  std::vector<bool> accuracy_ratings;   // true = does not contradict
};

// Parses a completed task file. Fluency cells hold 1..5; accuracy cells hold
// "yes" (contradicts) or "no". Blank cells are unrated.
std::vector<HumanEvalItem> ParseHumanEvalTasks(std::string_view tsv);

struct SystemRating {
  double fluency = 0.0;       // mean over items of the per-item mean
  double accuracy_pct = 0.0;  // share of "does not contradict" ratings
  std::size_t items = 0;

  // "4.65 / 95.6%"
  std::string Formatted() const;
};

// Throws DataError listing incomplete item ids unless allow_partial.
std::map<std::string, SystemRating> AggregateHumanEval(
    std::span<const HumanEvalItem> items, bool allow_partial = false,
    std::size_t ratings_per_item = 3);

nlohmann::json ToJson(const std::map<std::string, SystemRating>& ratings);
std::string RenderRatings(const std::map<std::string, SystemRating>& ratings);

}  // namespace rttape

#endif  // RTTAPE_ANALYSIS_H_
