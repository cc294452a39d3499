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

#ifndef RTTAPE_SCORING_H_
#define RTTAPE_SCORING_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace rttape {

inline constexpr int kMaxNgramOrder = 4;

// Output of the international tokenizer: non-empty, whitespace-free tokens.
struct TokenizedSentence {
  std::vector<std::string> tokens;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const TokenizedSentence&) const = default;
};

// International (mteval-v14 "intl") tokenization as done by sacreBLEU
// 1.2.20: punctuation is split off unless it sits between two digits on the
// relevant side, symbols are always split off. Case is preserved.
TokenizedSentence TokenizeIntl(std::string_view text);

// Tokenized text re-joined with single spaces.
std::string JoinTokens(const TokenizedSentence& sentence);

// Sufficient statistics for corpus BLEU. Merges by field-wise addition.
struct NgramStats {
  std::array<std::int64_t, kMaxNgramOrder> match{};
  std::array<std::int64_t, kMaxNgramOrder> total{};
  std::int64_t hyp_len = 0;
  std::int64_t ref_len = 0;

  NgramStats& operator+=(const NgramStats& other);
  friend NgramStats operator+(NgramStats a, const NgramStats& b) {
    return a += b;
  }
  bool operator==(const NgramStats&) const = default;
};

// Clipped n-gram matches of `hyp` against a single reference.
NgramStats ComputeNgramStats(const TokenizedSentence& hyp,
                             const TokenizedSentence& ref);

// Tokenizes both sides (after stripping trailing whitespace) and counts.
NgramStats SentenceStats(std::string_view hyp, std::string_view ref);

struct BleuConfig {
  std::string src_lang = "en";
  std::string tgt_lang;
  std::string test_set;
};

struct BleuScore {
  double score = 0.0;
  std::array<double, kMaxNgramOrder> precisions{};  // percentages
  double brevity_penalty = 0.0;
  std::int64_t hyp_len = 0;
  std::int64_t ref_len = 0;
  NgramStats stats;
  std::string signature;

  // Score rounded for display, as in published tables.
  std::string Formatted() const;
};

// Signature string identifying the scorer configuration, e.g.
// BLEU+case.mixed+lang.en-de+numrefs.1+smooth.exp+newstest2016+tok.intl+version.1.2.20
std::string Signature(const BleuConfig& cfg);

// Final score from accumulated statistics, with exponential smoothing of
// zero-match orders. Precisions are bit-identical to the reference scorer;
// the score agrees to within a few ulps and is exactly 100 for a perfect
// match.
BleuScore ScoreFromStats(const NgramStats& stats, const BleuConfig& cfg);

// Corpus BLEU of aligned hypothesis/reference lines (one reference).
// Throws DataError on an empty corpus or mismatched lengths. `jobs` bounds
// the threads used for tokenization and counting.
BleuScore CorpusBleu(std::span<const std::string> hyps,
                     std::span<const std::string> refs, const BleuConfig& cfg,
                     unsigned jobs = 1);

// Per-line statistics, for callers that score subsets of one corpus.
std::vector<NgramStats> LineStats(std::span<const std::string> hyps,
                                  std::span<const std::string> refs,
                                  unsigned jobs = 1);

nlohmann::json ToJson(const BleuScore& score);
nlohmann::json ToJson(const NgramStats& stats);

}  // namespace rttape

#endif  // RTTAPE_SCORING_H_
