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

#include "rttape/corpus.h"

#include <algorithm>
#include <fstream>
#include <queue>
#include <tuple>

#include <fmt/format.h>

#include "rttape/errors.h"
#include "rttape/io.h"
#include "rttape/parallel.h"
#include "rttape/unicode.h"

namespace rttape {

namespace fs = std::filesystem;

void FilterConfig::Validate() const {
  if (max_chars == 0 || max_tokens == 0 || bitext_max_tokens == 0) {
    throw DataError("filter limits must be positive");
  }
  if (!(max_len_ratio >= 1.0)) {
    throw DataError(fmt::format("max_len_ratio must be >= 1.0 (got {})", max_len_ratio));
  }
}

nlohmann::json ToJson(const FilterConfig& cfg) {
  return {{"max_chars", cfg.max_chars},
          {"max_tokens", cfg.max_tokens},
          {"bitext_max_tokens", cfg.bitext_max_tokens},
          {"max_len_ratio", cfg.max_len_ratio},
          {"ratio_unit", cfg.ratio_unit == LengthUnit::kTokens ? "tokens" : "chars"},
          {"token_definition", "whitespace"},
          {"char_definition", "unicode_scalar_values"}};
}

std::string_view ToString(MonoVerdict v) {
  switch (v) {
    case MonoVerdict::kKeep: return "keep";
    case MonoVerdict::kEmpty: return "empty";
    case MonoVerdict::kTooManyChars: return "too_many_chars";
    case MonoVerdict::kTooManyTokens: return "too_many_tokens";
  }
  return "?";
}

std::string_view ToString(BitextVerdict v) {
  switch (v) {
    case BitextVerdict::kKeep: return "keep";
    case BitextVerdict::kEmptySide: return "empty_side";
    case BitextVerdict::kTooLong: return "too_long";
    case BitextVerdict::kLengthRatio: return "length_ratio";
  }
  return "?";
}

MonoVerdict ClassifyMono(std::string_view line, const FilterConfig& cfg) {
  if (line.empty()) return MonoVerdict::kEmpty;
  // Cheap upper bound first: a line can't have more code points than bytes.
  if (line.size() > cfg.max_chars && unicode::CountCodePoints(line) > cfg.max_chars) {
    return MonoVerdict::kTooManyChars;
  }
  if (unicode::CountWhitespaceTokens(line) > cfg.max_tokens) {
    return MonoVerdict::kTooManyTokens;
  }
  return MonoVerdict::kKeep;
}

BitextVerdict ClassifyBitext(const SentencePair& pair, const FilterConfig& cfg) {
  const std::size_t src_tokens = unicode::CountWhitespaceTokens(pair.source);
  const std::size_t tgt_tokens = unicode::CountWhitespaceTokens(pair.target);
  if (src_tokens == 0 || tgt_tokens == 0) return BitextVerdict::kEmptySide;
  if (src_tokens > cfg.bitext_max_tokens || tgt_tokens > cfg.bitext_max_tokens) {
    return BitextVerdict::kTooLong;
  }
  std::size_t a = src_tokens;
  std::size_t b = tgt_tokens;
  if (cfg.ratio_unit == LengthUnit::kChars) {
    a = unicode::CountCodePoints(unicode::Trim(pair.source));
    b = unicode::CountCodePoints(unicode::Trim(pair.target));
  }
  const double ratio = static_cast<double>(std::max(a, b)) /
                       static_cast<double>(std::min(a, b));
  if (ratio > cfg.max_len_ratio) return BitextVerdict::kLengthRatio;
  return BitextVerdict::kKeep;
}

void FilterReport::Count(MonoVerdict v) {
  ++read;
  if (v == MonoVerdict::kKeep) {
    ++kept;
  } else {
    ++rejected_by_rule[std::string(ToString(v))];
  }
}

void FilterReport::Count(BitextVerdict v) {
  ++read;
  if (v == BitextVerdict::kKeep) {
    ++kept;
  } else {
    ++rejected_by_rule[std::string(ToString(v))];
  }
}

nlohmann::json FilterReport::ToJson() const {
  nlohmann::json rules = nlohmann::json::object();
  for (const auto& [k, v] : rejected_by_rule) rules[k] = v;
  return {{"read", read}, {"kept", kept}, {"rejected_by_rule", rules}};
}

std::vector<MonoVerdict> ClassifyMonoBatch(std::span<const std::string> lines,
                                           const FilterConfig& cfg, unsigned jobs) {
  std::vector<MonoVerdict> out(lines.size());
  ParallelChunks(lines.size(), 4096, jobs, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = ClassifyMono(lines[i], cfg);
  });
  return out;
}

nlohmann::json DedupReport::ToJson() const {
  return {{"read", read}, {"kept", kept}, {"duplicates", duplicates}};
}

bool Deduper::Insert(std::string_view line) {
  ++report_.read;
  if (seen_.insert(LineFingerprint(line)).second) {
    ++report_.kept;
    return true;
  }
  ++report_.duplicates;
  return false;
}

std::vector<std::string> Dedup(std::span<const std::string> lines, DedupReport* report) {
  Deduper d;
  std::vector<std::string> out;
  for (const auto& l : lines) {
    if (d.Insert(l)) out.push_back(l);
  }
  if (report != nullptr) *report = d.report();
  return out;
}

DedupReport DedupStream(LineReader& in, LineWriter& out) {
  Deduper d;
  std::string line;
  while (in.Next(line)) {
    if (d.Insert(line)) out.Write(line);
  }
  return d.report();
}

namespace {

// Run file record: u64 index, u64 length, bytes.
void WriteRecord(std::ofstream& out, std::uint64_t index, std::string_view line) {
  const std::uint64_t len = line.size();
  out.write(reinterpret_cast<const char*>(&index), sizeof index);
  out.write(reinterpret_cast<const char*>(&len), sizeof len);
  out.write(line.data(), static_cast<std::streamsize>(len));
}

bool ReadRecord(std::ifstream& in, std::uint64_t& index, std::string& line) {
  std::uint64_t len = 0;
  if (!in.read(reinterpret_cast<char*>(&index), sizeof index)) return false;
  if (!in.read(reinterpret_cast<char*>(&len), sizeof len)) return false;
  line.resize(len);
  return static_cast<bool>(in.read(line.data(), static_cast<std::streamsize>(len)));
}

}  // namespace

DedupReport DedupExternal(const fs::path& in, const fs::path& out,
                          const fs::path& tmp_dir, std::size_t run_lines) {
  run_lines = std::max<std::size_t>(run_lines, 1);
  fs::create_directories(tmp_dir);
  std::vector<fs::path> runs;
  DedupReport report;

  auto spill = [&](std::vector<std::pair<std::string, std::uint64_t>>& chunk) {
    std::sort(chunk.begin(), chunk.end());
    fs::path p = tmp_dir / fmt::format("dedup-run-{:06d}.bin", runs.size());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write " + p.string());
    for (const auto& [line, idx] : chunk) WriteRecord(f, idx, line);
    runs.push_back(std::move(p));
    chunk.clear();
  };

  {
    LineReader reader(in);
    std::vector<std::pair<std::string, std::uint64_t>> chunk;
    std::string line;
    while (reader.Next(line)) {
      chunk.emplace_back(std::move(line), report.read++);
      if (chunk.size() >= run_lines) spill(chunk);
    }
    if (!chunk.empty()) spill(chunk);
  }

  struct Head {
    std::string line;
    std::uint64_t index;
    std::size_t run;
    bool operator>(const Head& o) const {
      return std::tie(line, index) > std::tie(o.line, o.index);
    }
  };
  std::vector<std::ifstream> files;
  files.reserve(runs.size());
  std::priority_queue<Head, std::vector<Head>, std::greater<>> heap;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    files.emplace_back(runs[r], std::ios::binary);
    Head h{{}, 0, r};
    if (ReadRecord(files[r], h.index, h.line)) heap.push(std::move(h));
  }
  std::vector<std::uint64_t> first_index;
  std::string previous;
  bool have_previous = false;
  while (!heap.empty()) {
    Head h = heap.top();
    heap.pop();
    if (!have_previous || h.line != previous) {
      first_index.push_back(h.index);
      previous = h.line;
      have_previous = true;
    }
    Head next{{}, 0, h.run};
    if (ReadRecord(files[h.run], next.index, next.line)) heap.push(std::move(next));
  }
  files.clear();
  for (const auto& p : runs) fs::remove(p);
  std::sort(first_index.begin(), first_index.end());

  LineReader reader(in);
  LineWriter writer(out);
  std::string line;
  std::uint64_t index = 0;
  std::size_t next = 0;
  while (reader.Next(line)) {
    if (next < first_index.size() && first_index[next] == index) {
      writer.Write(line);
      ++next;
    }
    ++index;
  }
  writer.Close();
  report.kept = first_index.size();
  report.duplicates = report.read - report.kept;
  return report;
}

void ReservoirSampler::Offer(std::string line) {
  const std::uint64_t i = seen_++;
  if (slots_.size() < n_) {
    slots_.emplace_back(i, std::move(line));
    return;
  }
  if (n_ == 0) return;
  const std::uint64_t j = rng_.Below(i + 1);
  if (j < n_) slots_[j] = {i, std::move(line)};
}

std::vector<std::string> ReservoirSampler::Take() && {
  if (seen_ < n_) {
    throw DataError(fmt::format("cannot sample {} lines from a corpus of {}", n_, seen_));
  }
  std::sort(slots_.begin(), slots_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  out.reserve(slots_.size());
  for (auto& [_, line] : slots_) out.push_back(std::move(line));
  return out;
}

std::vector<std::string> SampleLines(std::span<const std::string> lines, std::size_t n,
                                     std::uint64_t seed) {
  if (n > lines.size()) {
    throw DataError(fmt::format("cannot sample {} lines from a corpus of {}", n,
                                lines.size()));
  }
  ReservoirSampler sampler(n, seed);
  for (const auto& l : lines) sampler.Offer(l);
  return std::move(sampler).Take();
}

MonolingualCorpus SampleSubset(const MonolingualCorpus& corpus, std::size_t n,
                               std::uint64_t seed) {
  return MonolingualCorpus{
      corpus.lang, SampleLines(corpus.lines, n, seed),
      fmt::format("{} (sample n={} seed={})", corpus.provenance, n, seed)};
}

}  // namespace rttape
