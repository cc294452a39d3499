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

#ifndef RTTAPE_CORPUS_H_
#define RTTAPE_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rttape/fingerprint.h"
#include "rttape/random.h"

namespace rttape {

class LineReader;
class LineWriter;

enum class LengthUnit { kTokens, kChars };

// Length limits for monolingual and bitext filtering. Defaults are the News
// Crawl / WMT settings: 500 characters or 70 tokens per monolingual line,
// 250 tokens per bitext side, side-length ratio at most 2.
struct FilterConfig {
  std::size_t max_chars = 500;
  std::size_t max_tokens = 70;
  std::size_t bitext_max_tokens = 250;
  double max_len_ratio = 2.0;
  LengthUnit ratio_unit = LengthUnit::kTokens;

  // Throws DataError if a limit is zero or the ratio is below 1.
  void Validate() const;
};

nlohmann::json ToJson(const FilterConfig& cfg);

struct SentencePair {
  std::string source;
  std::string target;
  bool operator==(const SentencePair&) const = default;
};

struct MonolingualCorpus {
  std::string lang;
  std::vector<std::string> lines;
  std::string provenance;
};

enum class MonoVerdict { kKeep, kEmpty, kTooManyChars, kTooManyTokens };
enum class BitextVerdict { kKeep, kEmptySide, kTooLong, kLengthRatio };

std::string_view ToString(MonoVerdict v);
std::string_view ToString(BitextVerdict v);

// Characters are Unicode scalar values, tokens are whitespace-separated.
MonoVerdict ClassifyMono(std::string_view line, const FilterConfig& cfg);
inline bool MonoFilter(std::string_view line, const FilterConfig& cfg) {
  return ClassifyMono(line, cfg) == MonoVerdict::kKeep;
}

BitextVerdict ClassifyBitext(const SentencePair& pair, const FilterConfig& cfg);
inline bool BitextFilter(const SentencePair& pair, const FilterConfig& cfg) {
  return ClassifyBitext(pair, cfg) == BitextVerdict::kKeep;
}

// Counters emitted as {read, kept, rejected_by_rule}.
struct FilterReport {
  std::uint64_t read = 0;
  std::uint64_t kept = 0;
  std::map<std::string, std::uint64_t> rejected_by_rule;

  void Count(MonoVerdict v);
  void Count(BitextVerdict v);
  nlohmann::json ToJson() const;
};

// Verdicts for a block of lines, evaluated on up to `jobs` threads.
std::vector<MonoVerdict> ClassifyMonoBatch(std::span<const std::string> lines,
                                           const FilterConfig& cfg,
                                           unsigned jobs);

struct DedupReport {
  std::uint64_t read = 0;
  std::uint64_t kept = 0;
  std::uint64_t duplicates = 0;
  nlohmann::json ToJson() const;
};

// First-occurrence-wins dedup over a stream. Memory is one 128-bit
// fingerprint per distinct line.
class Deduper {
 public:
  // True if `line` has not been seen before.
  bool Insert(std::string_view line);

  const DedupReport& report() const { return report_; }
  std::size_t distinct() const { return seen_.size(); }

 private:
  std::unordered_set<Fingerprint128, Fingerprint128Hash> seen_;
  DedupReport report_;
};

std::vector<std::string> Dedup(std::span<const std::string> lines,
                               DedupReport* report = nullptr);

DedupReport DedupStream(LineReader& in, LineWriter& out);

// Exact dedup for audits: sorted runs of at most `run_lines` lines are
// spilled to `tmp_dir`, merged to find each distinct line's first index, and
// a second pass over `in` emits those lines in input order. No hashing.
DedupReport DedupExternal(const std::filesystem::path& in,
                          const std::filesystem::path& out,
                          const std::filesystem::path& tmp_dir,
                          std::size_t run_lines = 1 << 20);

// Single-pass uniform sampling of exactly n lines (reservoir), emitted in
// original relative order.
class ReservoirSampler {
 public:
  ReservoirSampler(std::size_t n, std::uint64_t seed) : n_(n), rng_(seed) {
    slots_.reserve(n);
  }

  void Offer(std::string line);

  std::uint64_t seen() const { return seen_; }

  // Throws DataError if fewer than n lines were offered.
  std::vector<std::string> Take() &&;

 private:
  std::size_t n_;
  Rng rng_;
  std::uint64_t seen_ = 0;
  std::vector<std::pair<std::uint64_t, std::string>> slots_;
};

std::vector<std::string> SampleLines(std::span<const std::string> lines,
                                     std::size_t n, std::uint64_t seed);

MonolingualCorpus SampleSubset(const MonolingualCorpus& corpus, std::size_t n,
                               std::uint64_t seed);

}  // namespace rttape

#endif  // RTTAPE_CORPUS_H_
