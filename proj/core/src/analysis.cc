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

#include "rttape/analysis.h"

#include <algorithm>

#include <fmt/format.h>

#include "rttape/errors.h"
#include "rttape/unicode.h"

namespace rttape {

void VocabCounter::Add(std::string_view line) {
  if (tokenizer_ == VocabTokenizer::kIntl) {
    for (auto& t : TokenizeIntl(unicode::TrimRight(line)).tokens) tokens_.insert(std::move(t));
    return;
  }
  for (auto t : unicode::SplitWhitespace(line)) tokens_.emplace(t);
}

std::size_t VocabSize(std::span<const std::string> lines, VocabTokenizer tokenizer) {
  VocabCounter counter(tokenizer);
  for (const auto& l : lines) counter.Add(l);
  return counter.size();
}

nlohmann::json AnalysisReport::ToJson() const {
  nlohmann::json j;
  j["vocab_sizes"] = vocab_sizes;
  if (rtt_bleu) {
    j["rtt_bleu"] = rttape::ToJson(*rtt_bleu);
    j["precision_breakdown"] = {{"1", rtt_bleu->precisions[0]},
                                {"2", rtt_bleu->precisions[1]},
                                {"3", rtt_bleu->precisions[2]},
                                {"4", rtt_bleu->precisions[3]}};
  }
  nlohmann::json split = nlohmann::json::object();
  for (const auto& [label, halves] : split_scores) {
    for (const auto& [half, score] : halves) split[label][half] = rttape::ToJson(score);
  }
  j["split_scores"] = split;
  j["metadata"] = metadata;
  return j;
}

std::string AnalysisReport::RenderTable() const {
  std::string out;
  if (rtt_bleu) {
    out += fmt::format("BLEU {:.1f}  precisions {:.1f}/{:.1f}/{:.1f}/{:.1f}  bp {:.3f}\n",
                       rtt_bleu->score, rtt_bleu->precisions[0], rtt_bleu->precisions[1],
                       rtt_bleu->precisions[2], rtt_bleu->precisions[3],
                       rtt_bleu->brevity_penalty);
  }
  for (const auto& [label, size] : vocab_sizes) {
    out += fmt::format("vocab {:<12} {}\n", label, size);
  }
  if (split_scores.empty()) return out;

  const std::string src = metadata.value("src_lang", std::string("src"));
  const std::string tgt = metadata.value("tgt_lang", std::string("tgt"));
  const std::vector<std::pair<std::string, std::string>> columns = {
      {std::string(kHalfFull), "full"},
      {std::string(kHalfTargetOriginal), "orig-" + tgt},
      {std::string(kHalfSourceOriginal), "orig-" + src}};
  std::size_t width = 6;
  for (const auto& [label, _] : split_scores) width = std::max(width, label.size());
  out += fmt::format("{:<{}}", "system", width);
  for (const auto& [_, title] : columns) out += fmt::format("  {:>9}", title);
  out += "\n";
  for (const auto& [label, halves] : split_scores) {
    out += fmt::format("{:<{}}", label, width);
    for (const auto& [key, _] : columns) {
      auto it = halves.find(key);
      out += fmt::format("  {:>9}", it == halves.end() ? "-" : it->second.Formatted());
    }
    out += "\n";
  }
  return out;
}

AnalysisReport RttQualityReport(std::span<const std::string> originals,
                                std::span<const std::string> round_trips,
                                const BleuConfig& cfg, VocabTokenizer tokenizer) {
  if (originals.size() != round_trips.size()) {
    throw DataError(fmt::format("{} originals but {} round trips", originals.size(),
                                round_trips.size()));
  }
  AnalysisReport report;
  report.rtt_bleu = CorpusBleu(round_trips, originals, cfg);
  report.vocab_sizes["original"] = VocabSize(originals, tokenizer);
  report.vocab_sizes["round_trip"] = VocabSize(round_trips, tokenizer);
  report.metadata = {{"sentences", originals.size()},
                     {"vocab_tokenizer", tokenizer == VocabTokenizer::kIntl ? "intl" : "whitespace"},
                     {"vocab_case_sensitive", true}};
  return report;
}

AnalysisReport SplitScoreTable(
    const TestSet& ts, const std::vector<std::pair<std::string, std::vector<std::string>>>& hyps,
    const BleuConfig& cfg, unsigned jobs) {
  const SplitHalves halves = SplitByOrigin(ts);
  const std::vector<std::string> refs = ts.ReferenceTexts();

  AnalysisReport report;
  report.metadata = {{"test_set", ts.name},
                     {"src_lang", ts.src_lang},
                     {"tgt_lang", ts.tgt_lang},
                     {"segments",
                      {{"full", ts.size()},
                       {"source_original", halves.source_original.size()},
                       {"target_original", halves.target_original.size()},
                       {"unknown", halves.unknown.size()}}}};

  for (const auto& [label, hyp] : hyps) {
    if (hyp.size() != ts.size()) {
      throw DataError(fmt::format("system '{}' has {} lines but the test set has {}", label,
                                  hyp.size(), ts.size()));
    }
    const std::vector<NgramStats> per_line = LineStats(hyp, refs, jobs);
    auto sum = [&](const std::vector<std::size_t>& idx) {
      NgramStats s;
      for (std::size_t i : idx) s += per_line[i];
      return s;
    };
    NgramStats full;
    for (const auto& s : per_line) full += s;

    auto& row = report.split_scores[label];
    if (!per_line.empty()) row[std::string(kHalfFull)] = ScoreFromStats(full, cfg);
    if (!halves.source_original.empty()) {
      row[std::string(kHalfSourceOriginal)] = ScoreFromStats(sum(halves.source_original), cfg);
    }
    if (!halves.target_original.empty()) {
      row[std::string(kHalfTargetOriginal)] = ScoreFromStats(sum(halves.target_original), cfg);
    }
  }
  return report;
}

}  // namespace rttape
