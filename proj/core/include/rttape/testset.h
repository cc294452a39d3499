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

#ifndef RTTAPE_TESTSET_H_
#define RTTAPE_TESTSET_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace rttape {

inline constexpr std::string_view kUnknownOrigin = "unknown";

struct Segment {
  std::string seg_id;
  std::string doc_id;
  std::string orig_lang{kUnknownOrigin};
  std::string text;

  bool operator==(const Segment&) const = default;
};

enum class SgmSide { kSource, kReference, kHypothesis };

// Parsed SGM file: the set-level attributes plus all segments.
struct SgmDocument {
  std::string set_id;
  std::string src_lang;
  std::string tgt_lang;
  std::vector<Segment> segments;
};

// Lenient scanner for WMT-style SGM. Accepts unquoted and single-quoted
// attribute values, stray ampersands and arbitrary markup between segments.
// orig_lang comes from the enclosing <doc origlang=...>, lowercased, or
// "unknown". Throws ParseError when no <seg> is found, when <doc> elements
// are nested or unbalanced, or when a segment is unterminated / id-less /
// duplicated.
SgmDocument ParseSgmDocument(std::string_view raw, SgmSide side);
std::vector<Segment> ParseSgm(std::string_view raw, SgmSide side);

// Canonical SGM: quoted attributes, one element per line, entities escaped.
// Consecutive segments with equal doc_id share a <doc> element.
std::string SerializeSgm(std::span<const Segment> segments, SgmSide side,
                         std::string_view set_id, std::string_view src_lang,
                         std::string_view tgt_lang);

struct TestSet {
  std::string name;
  std::string src_lang;
  std::string tgt_lang;
  std::vector<Segment> source;
  std::vector<Segment> reference;
  std::optional<std::vector<std::string>> hypothesis;

  std::size_t size() const { return source.size(); }
  std::vector<std::string> ReferenceTexts() const;
  std::vector<std::string> SourceTexts() const;
};

// Positional alignment of independently parsed sides. Throws DataError if
// the lengths or the (doc_id, seg_id) sequences differ.
TestSet AlignTestSet(std::string name, std::string src_lang,
                     std::string tgt_lang, std::vector<Segment> source,
                     std::vector<Segment> reference,
                     std::optional<std::vector<std::string>> hypothesis = {});

// Plain-text test set: one sentence per line plus an origin-labels sidecar
// (one language code per line). Segments get doc_id = name and 1-based
// seg_ids.
TestSet LoadPlainTestSet(std::string name, std::string src_lang,
                         std::string tgt_lang,
                         std::vector<std::string> source_lines,
                         std::vector<std::string> reference_lines,
                         const std::vector<std::string>& origin_labels);

// Normalizes an origin label: lowercased and trimmed; empty -> "unknown".
std::string NormalizeOrigin(std::string_view label);

struct SplitHalves {
  std::vector<std::size_t> source_original;
  std::vector<std::size_t> target_original;
  std::vector<std::size_t> unknown;  // neither language, or unlabeled

  std::size_t total() const {
    return source_original.size() + target_original.size() + unknown.size();
  }
  bool IsTargetOriginal(std::size_t i) const;
};

SplitHalves SplitByOrigin(std::span<const Segment> source,
                          std::string_view src_lang, std::string_view tgt_lang);
inline SplitHalves SplitByOrigin(const TestSet& ts) {
  return SplitByOrigin(ts.source, ts.src_lang, ts.tgt_lang);
}

enum class MergeMode { kAll, kTargetOriginalOnly };

// mode=kAll returns `edited`; kTargetOriginalOnly takes edited lines on the
// target-original half and base lines elsewhere. Throws DataError on length
// mismatch or out-of-range indices.
std::vector<std::string> MergeSelective(std::span<const std::string> base,
                                        std::span<const std::string> edited,
                                        const SplitHalves& halves,
                                        MergeMode mode);

nlohmann::json ToJson(const SplitHalves& halves);
SplitHalves SplitHalvesFromJson(const nlohmann::json& j);

}  // namespace rttape

#endif  // RTTAPE_TESTSET_H_
