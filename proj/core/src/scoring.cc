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

#include "rttape/scoring.h"

#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "rttape/errors.h"
#include "rttape/parallel.h"
#include "rttape/unicode.h"

namespace rttape {
namespace {

constexpr char kScorerVersion[] = "1.2.20";

// N-gram of interned token ids; unused trailing slots are -1.
struct NgramKey {
  std::array<std::int32_t, kMaxNgramOrder> ids;
  bool operator==(const NgramKey&) const = default;
};

struct NgramKeyHash {
  std::size_t operator()(const NgramKey& k) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (auto id : k.ids) {
      h ^= static_cast<std::uint32_t>(id) + 0x9E3779B97F4A7C15ull + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

using NgramCounts = std::unordered_map<NgramKey, std::int64_t, NgramKeyHash>;

std::vector<std::int32_t> Intern(
    const TokenizedSentence& s,
    std::unordered_map<std::string_view, std::int32_t>& vocab) {
  std::vector<std::int32_t> ids;
  ids.reserve(s.tokens.size());
  for (const auto& t : s.tokens) {
    auto [it, _] = vocab.try_emplace(t, static_cast<std::int32_t>(vocab.size()));
    ids.push_back(it->second);
  }
  return ids;
}

NgramCounts CountNgrams(const std::vector<std::int32_t>& ids) {
  NgramCounts counts;
  for (int n = 1; n <= kMaxNgramOrder; ++n) {
    for (std::size_t i = 0; i + n <= ids.size(); ++i) {
      NgramKey key;
      key.ids.fill(-1);
      for (int k = 0; k < n; ++k) key.ids[k] = ids[i + k];
      ++counts[key];
    }
  }
  return counts;
}

int Order(const NgramKey& key) {
  int n = 0;
  while (n < kMaxNgramOrder && key.ids[n] >= 0) ++n;
  return n;
}

// Mirrors the reference scorer's floored log.
double FlooredLog(double x) { return x == 0.0 ? -9999999999.0 : std::log(x); }

}  // namespace

NgramStats& NgramStats::operator+=(const NgramStats& other) {
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    match[n] += other.match[n];
    total[n] += other.total[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

NgramStats ComputeNgramStats(const TokenizedSentence& hyp,
                             const TokenizedSentence& ref) {
  std::unordered_map<std::string_view, std::int32_t> vocab;
  const NgramCounts hyp_counts = CountNgrams(Intern(hyp, vocab));
  const NgramCounts ref_counts = CountNgrams(Intern(ref, vocab));

  NgramStats stats;
  stats.hyp_len = static_cast<std::int64_t>(hyp.size());
  stats.ref_len = static_cast<std::int64_t>(ref.size());
  for (const auto& [key, count] : hyp_counts) {
    const int n = Order(key);
    stats.total[n - 1] += count;
    if (auto it = ref_counts.find(key); it != ref_counts.end()) {
      stats.match[n - 1] += std::min(count, it->second);
    }
  }
  return stats;
}

NgramStats SentenceStats(std::string_view hyp, std::string_view ref) {
  return ComputeNgramStats(TokenizeIntl(unicode::TrimRight(hyp)),
                           TokenizeIntl(unicode::TrimRight(ref)));
}

std::string BleuScore::Formatted() const { return fmt::format("{:.1f}", score); }

std::string Signature(const BleuConfig& cfg) {
  return fmt::format(
      "BLEU+case.mixed+lang.{}-{}+numrefs.1+smooth.exp+{}+tok.intl+version.{}",
      cfg.src_lang, cfg.tgt_lang, cfg.test_set, kScorerVersion);
}

BleuScore ScoreFromStats(const NgramStats& stats, const BleuConfig& cfg) {
  BleuScore out;
  out.stats = stats;
  out.hyp_len = stats.hyp_len;
  out.ref_len = stats.ref_len;
  out.signature = Signature(cfg);

  // Percentages as the reference scorer reports them; the score itself is
  // the geometric mean of the fractions.
  std::array<double, kMaxNgramOrder> fractions{};
  double smooth = 1.0;
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    if (stats.total[n] == 0) break;
    const auto total = static_cast<double>(stats.total[n]);
    if (stats.match[n] == 0) {
      smooth *= 2;
      out.precisions[n] = 100.0 / (smooth * total);
      fractions[n] = 1.0 / (smooth * total);
    } else {
      const auto match = static_cast<double>(stats.match[n]);
      out.precisions[n] = 100.0 * match / total;
      fractions[n] = match / total;
    }
  }

  out.brevity_penalty = 1.0;
  if (stats.hyp_len < stats.ref_len) {
    out.brevity_penalty =
        stats.hyp_len > 0
            ? std::exp(1.0 - static_cast<double>(stats.ref_len) /
                                 static_cast<double>(stats.hyp_len))
            : 0.0;
  }

  double log_sum = 0.0;
  for (double p : fractions) log_sum += FlooredLog(p);
  out.score = out.brevity_penalty * std::exp(log_sum / kMaxNgramOrder) * 100.0;
  return out;
}

std::vector<NgramStats> LineStats(std::span<const std::string> hyps,
                                  std::span<const std::string> refs,
                                  unsigned jobs) {
  if (hyps.size() != refs.size()) {
    throw DataError(fmt::format(
        "hypothesis and reference have different lengths ({} vs {})",
        hyps.size(), refs.size()));
  }
  std::vector<NgramStats> out(hyps.size());
  ParallelChunks(hyps.size(), 256, jobs, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = SentenceStats(hyps[i], refs[i]);
  });
  return out;
}

BleuScore CorpusBleu(std::span<const std::string> hyps,
                     std::span<const std::string> refs, const BleuConfig& cfg,
                     unsigned jobs) {
  if (hyps.empty() && refs.empty()) throw DataError("empty corpus");
  NgramStats total;
  for (const auto& s : LineStats(hyps, refs, jobs)) total += s;
  return ScoreFromStats(total, cfg);
}

nlohmann::json ToJson(const NgramStats& stats) {
  return {{"match", stats.match},
          {"total", stats.total},
          {"hyp_len", stats.hyp_len},
          {"ref_len", stats.ref_len}};
}

nlohmann::json ToJson(const BleuScore& score) {
  return {{"score", score.score},
          {"precisions", score.precisions},
          {"bp", score.brevity_penalty},
          {"hyp_len", score.hyp_len},
          {"ref_len", score.ref_len},
          {"counts", score.stats.match},
          {"totals", score.stats.total},
          {"signature", score.signature},
          {"unicode_version", std::string(unicode::TableVersion())}};
}

}  // namespace rttape
