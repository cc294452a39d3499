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

#include "rttape/pipeline.h"

#include <fmt/format.h>

#include "rttape/errors.h"

namespace rttape {
namespace {

void CheckComposes(const BackendSpec& y_to_x, const BackendSpec& x_to_y) {
  if (y_to_x.kind == BackendKind::kIdentity || x_to_y.kind == BackendKind::kIdentity) return;
  if (y_to_x.direction.to != x_to_y.direction.from ||
      y_to_x.direction.from != x_to_y.direction.to) {
    throw DataError(fmt::format("backends do not compose: {}->{} then {}->{}",
                                y_to_x.direction.from, y_to_x.direction.to,
                                x_to_y.direction.from, x_to_y.direction.to));
  }
}

}  // namespace

nlohmann::json RttReport::ToJson() const {
  return {{"read", read},
          {"emitted", emitted},
          {"original_filter", original_filter.ToJson()},
          {"round_trip_filter", round_trip_filter.ToJson()}};
}

RttReport GenerateRtt(const LineSource& corpus, const BackendSpec& y_to_x,
                      const BackendSpec& x_to_y, const RttOptions& options,
                      const RttSink& sink) {
  options.filter.Validate();
  y_to_x.Validate();
  x_to_y.Validate();
  CheckComposes(y_to_x, x_to_y);

  RttReport report;
  std::uint64_t survivors_before = 0;  // salt base of the current chunk
  std::vector<std::string> chunk;
  std::vector<std::uint64_t> chunk_lines;  // corpus line index per survivor

  auto flush = [&] {
    if (chunk.empty()) return;
    TranslateOptions t = options.translate;
    t.salt_base = survivors_before;
    std::vector<std::string> pivot;
    std::vector<std::string> back;
    try {
      pivot = TranslateBatch(y_to_x, chunk, t);
      back = TranslateBatch(x_to_y, pivot, t);
    } catch (const BackendError& e) {
      // Re-express the range in corpus line numbers.
      const std::size_t b = chunk_lines[std::min(e.begin(), chunk.size() - 1)];
      const std::size_t last = chunk_lines[std::min(e.end(), chunk.size()) - 1];
      throw BackendError(e.what(), b, last + 1);
    }
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      if (options.filter_round_trip) {
        const MonoVerdict v = ClassifyMono(back[i], options.filter);
        report.round_trip_filter.Count(v);
        if (v != MonoVerdict::kKeep) continue;
      }
      sink(RttPair{std::move(chunk[i]), std::move(back[i])}, pivot[i]);
      ++report.emitted;
    }
    survivors_before += chunk.size();
    chunk.clear();
    chunk_lines.clear();
  };

  std::string line;
  while (corpus(line)) {
    const std::uint64_t index = report.read++;
    const MonoVerdict v = ClassifyMono(line, options.filter);
    report.original_filter.Count(v);
    if (v != MonoVerdict::kKeep) continue;
    chunk.push_back(line);
    chunk_lines.push_back(index);
    if (chunk.size() >= std::max<std::size_t>(options.chunk_lines, 1)) flush();
  }
  flush();
  return report;
}

std::vector<RttPair> GenerateRtt(std::span<const std::string> corpus,
                                 const BackendSpec& y_to_x, const BackendSpec& x_to_y,
                                 const RttOptions& options, RttReport* report) {
  std::size_t next = 0;
  std::vector<RttPair> out;
  RttReport r = GenerateRtt(
      [&](std::string& line) {
        if (next >= corpus.size()) return false;
        line = corpus[next++];
        return true;
      },
      y_to_x, x_to_y, options,
      [&](const RttPair& p, std::string_view) { out.push_back(p); });
  if (report != nullptr) *report = std::move(r);
  return out;
}

SentencePair ToTrainingPair(const RttPair& pair, PairDirection direction) {
  if (direction == PairDirection::kNormal) return {pair.round_trip, pair.original};
  return {pair.original, pair.round_trip};
}

std::vector<SentencePair> MakeTrainingPairs(std::span<const RttPair> pairs,
                                            PairDirection direction,
                                            const FilterConfig& cfg,
                                            FilterReport* report) {
  cfg.Validate();
  FilterReport r;
  std::vector<SentencePair> out;
  out.reserve(pairs.size());
  for (const RttPair& p : pairs) {
    SentencePair sp = ToTrainingPair(p, direction);
    const BitextVerdict v = ClassifyBitext(sp, cfg);
    r.Count(v);
    if (v == BitextVerdict::kKeep) out.push_back(std::move(sp));
  }
  if (report != nullptr) *report = std::move(r);
  return out;
}

void ApeMode::Validate() const {
  if (iterations < 1) throw DataError("APE iterations must be >= 1");
}

nlohmann::json ChangeReport::ToJson() const {
  std::size_t total_changed = 0;
  for (auto c : changed_per_iteration) total_changed += c;
  return {{"total_lines", total_lines},
          {"in_scope", in_scope},
          {"changed_per_iteration", changed_per_iteration},
          {"changed_total", total_changed}};
}

ApeResult ApplyApe(std::span<const std::string> hyp, const BackendSpec& ape,
                   const SplitHalves& halves, const ApeMode& mode,
                   const TranslateOptions& options) {
  mode.Validate();
  ape.Validate();

  std::vector<std::size_t> scope;
  if (mode.scope == ApeScope::kAll) {
    scope.resize(hyp.size());
    for (std::size_t i = 0; i < hyp.size(); ++i) scope[i] = i;
  } else {
    scope = halves.target_original;
  }
  for (std::size_t i : scope) {
    if (i >= hyp.size()) {
      throw DataError(fmt::format("split index {} out of range for {} hypothesis lines", i,
                                  hyp.size()));
    }
  }

  ApeResult result;
  result.output.assign(hyp.begin(), hyp.end());
  result.report.total_lines = hyp.size();
  result.report.in_scope = scope.size();

  std::vector<std::string> current;
  current.reserve(scope.size());
  for (std::size_t i : scope) current.push_back(hyp[i]);

  TranslateOptions t = options;
  t.salts.assign(scope.begin(), scope.end());
  for (int it = 0; it < mode.iterations; ++it) {
    std::vector<std::string> next = TranslateBatch(ape, current, t);
    std::size_t changed = 0;
    for (std::size_t k = 0; k < next.size(); ++k) {
      if (next[k] != current[k]) ++changed;
    }
    result.report.changed_per_iteration.push_back(changed);
    current = std::move(next);
  }
  for (std::size_t k = 0; k < scope.size(); ++k) {
    result.output[scope[k]] = std::move(current[k]);
  }
  return result;
}

}  // namespace rttape
