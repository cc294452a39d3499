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

#include "rttape/testset.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "rttape/errors.h"
#include "rttape/unicode.h"

namespace rttape {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == ':' || c == '.';
}

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

void AppendCodePoint(unsigned long cp, std::string& out) {
  unicode::AppendUtf8(static_cast<unicode::CodePoint>(cp), out);
}

// Decodes the five XML entities plus numeric references. Anything else that
// starts with '&' is kept verbatim (real test sets contain bare ampersands).
std::string DecodeEntities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const std::size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(s[i++]);
      continue;
    }
    const std::string_view name = s.substr(i + 1, semi - i - 1);
    std::optional<std::string> rep;
    if (name == "amp") rep = "&";
    else if (name == "lt") rep = "<";
    else if (name == "gt") rep = ">";
    else if (name == "quot") rep = "\"";
    else if (name == "apos") rep = "'";
    else if (name.size() >= 2 && name[0] == '#') {
      const bool hex = name[1] == 'x' || name[1] == 'X';
      const std::string digits(name.substr(hex ? 2 : 1));
      const bool ok =
          !digits.empty() &&
          std::all_of(digits.begin(), digits.end(), [&](char c) {
            return hex ? std::isxdigit(static_cast<unsigned char>(c)) != 0
                       : std::isdigit(static_cast<unsigned char>(c)) != 0;
          });
      if (ok) {
        const unsigned long cp = std::stoul(digits, nullptr, hex ? 16 : 10);
        if (cp > 0 && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF)) {
          std::string tmp;
          AppendCodePoint(cp, tmp);
          rep = tmp;
        }
      }
    }
    if (rep) {
      out += *rep;
      i = semi + 1;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

std::string EscapeText(std::string_view s, bool attribute) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) {
          out += "&quot;";
          break;
        }
        [[fallthrough]];
      default: out.push_back(c);
    }
  }
  return out;
}

struct Tag {
  bool closing = false;
  std::string name;  // lowercased
  std::vector<std::pair<std::string, std::string>> attrs;
  std::size_t begin = 0;  // offset of '<'
  std::size_t end = 0;    // offset one past '>'

  std::optional<std::string> Attr(std::string_view key) const {
    for (const auto& [k, v] : attrs)
      if (k == key) return v;
    return std::nullopt;
  }
};

// Scans a tag starting at raw[pos] == '<'. Returns nullopt for things that
// are not element tags (comments, stray '<'); the caller then skips one byte.
std::optional<Tag> ScanTag(std::string_view raw, std::size_t pos) {
  Tag tag;
  tag.begin = pos;
  std::size_t i = pos + 1;
  if (i < raw.size() && raw[i] == '/') {
    tag.closing = true;
    ++i;
  }
  const std::size_t name_begin = i;
  while (i < raw.size() && IsNameChar(raw[i])) ++i;
  if (i == name_begin) return std::nullopt;
  tag.name = Lower(raw.substr(name_begin, i - name_begin));

  while (i < raw.size()) {
    while (i < raw.size() && IsSpace(raw[i])) ++i;
    if (i >= raw.size()) break;
    if (raw[i] == '>') {
      tag.end = i + 1;
      return tag;
    }
    if (raw[i] == '/' && i + 1 < raw.size() && raw[i + 1] == '>') {
      tag.end = i + 2;
      return tag;
    }
    const std::size_t key_begin = i;
    while (i < raw.size() && !IsSpace(raw[i]) && raw[i] != '=' && raw[i] != '>')
      ++i;
    std::string key = Lower(raw.substr(key_begin, i - key_begin));
    if (key.empty()) {
      ++i;
      continue;
    }
    while (i < raw.size() && IsSpace(raw[i])) ++i;
    std::string value;
    if (i < raw.size() && raw[i] == '=') {
      ++i;
      while (i < raw.size() && IsSpace(raw[i])) ++i;
      if (i < raw.size() && (raw[i] == '"' || raw[i] == '\'')) {
        const char quote = raw[i++];
        const std::size_t v_begin = i;
        while (i < raw.size() && raw[i] != quote) ++i;
        value = raw.substr(v_begin, i - v_begin);
        if (i < raw.size()) ++i;
      } else {
        const std::size_t v_begin = i;
        while (i < raw.size() && !IsSpace(raw[i]) && raw[i] != '>') ++i;
        value = raw.substr(v_begin, i - v_begin);
      }
    }
    tag.attrs.emplace_back(std::move(key), DecodeEntities(value));
  }
  return std::nullopt;  // ran off the end without '>'
}

std::size_t FindCaseInsensitive(std::string_view hay, std::string_view needle,
                                std::size_t from) {
  auto it = std::search(hay.begin() + static_cast<std::ptrdiff_t>(from), hay.end(),
                        needle.begin(), needle.end(), [](char a, char b) {
                          return std::tolower(static_cast<unsigned char>(a)) ==
                                 std::tolower(static_cast<unsigned char>(b));
                        });
  return it == hay.end() ? std::string_view::npos
                         : static_cast<std::size_t>(it - hay.begin());
}

std::string_view WrapperTag(SgmSide side) {
  switch (side) {
    case SgmSide::kSource: return "srcset";
    case SgmSide::kReference: return "refset";
    case SgmSide::kHypothesis: return "tstset";
  }
  return "srcset";
}

}  // namespace

std::string NormalizeOrigin(std::string_view label) {
  std::string out = Lower(unicode::Trim(label));
  return out.empty() ? std::string(kUnknownOrigin) : out;
}

SgmDocument ParseSgmDocument(std::string_view raw, SgmSide /*side*/) {
  SgmDocument doc;
  std::set<std::pair<std::string, std::string>> seen;
  bool in_doc = false;
  std::size_t doc_offset = 0;
  std::string doc_id;
  std::string orig_lang{kUnknownOrigin};

  std::size_t pos = 0;
  while ((pos = raw.find('<', pos)) != std::string_view::npos) {
    std::optional<Tag> tag = ScanTag(raw, pos);
    if (!tag) {
      ++pos;
      continue;
    }
    pos = tag->end;
    const std::string& name = tag->name;

    if (name == "srcset" || name == "refset" || name == "tstset") {
      if (tag->closing) continue;
      doc.set_id = tag->Attr("setid").value_or("");
      doc.src_lang = Lower(tag->Attr("srclang").value_or(""));
      doc.tgt_lang = Lower(tag->Attr("trglang").value_or(""));
    } else if (name == "doc") {
      if (tag->closing) {
        if (!in_doc) throw ParseError("</doc> without matching <doc>", tag->begin);
        in_doc = false;
      } else {
        if (in_doc) {
          throw ParseError(
              fmt::format("nested <doc> (previous <doc> opened at byte {})",
                          doc_offset),
              tag->begin);
        }
        in_doc = true;
        doc_offset = tag->begin;
        doc_id = tag->Attr("docid").value_or("");
        orig_lang = NormalizeOrigin(tag->Attr("origlang").value_or(""));
      }
    } else if (name == "seg" && !tag->closing) {
      if (!in_doc) throw ParseError("<seg> outside of <doc>", tag->begin);
      const std::size_t close = FindCaseInsensitive(raw, "</seg>", tag->end);
      if (close == std::string_view::npos) {
        throw ParseError("unterminated <seg>", tag->begin);
      }
      Segment seg;
      seg.seg_id = tag->Attr("id").value_or("");
      if (seg.seg_id.empty()) throw ParseError("<seg> without id", tag->begin);
      seg.doc_id = doc_id;
      seg.orig_lang = orig_lang;
      seg.text = std::string(
          unicode::Trim(DecodeEntities(raw.substr(tag->end, close - tag->end))));
      if (!seen.emplace(seg.doc_id, seg.seg_id).second) {
        throw ParseError(fmt::format("duplicate segment (docid={}, id={})",
                                     seg.doc_id, seg.seg_id),
                         tag->begin);
      }
      doc.segments.push_back(std::move(seg));
      pos = close + 6;
    }
  }
  if (in_doc) throw ParseError("<doc> is never closed", doc_offset);
  if (doc.segments.empty()) throw ParseError("no <seg> elements found", raw.size());
  return doc;
}

std::vector<Segment> ParseSgm(std::string_view raw, SgmSide side) {
  return ParseSgmDocument(raw, side).segments;
}

std::string SerializeSgm(std::span<const Segment> segments, SgmSide side,
                         std::string_view set_id, std::string_view src_lang,
                         std::string_view tgt_lang) {
  const std::string_view wrapper = WrapperTag(side);
  std::string out = fmt::format("<{} setid=\"{}\" srclang=\"{}\" trglang=\"{}\">\n",
                                wrapper, EscapeText(set_id, true),
                                EscapeText(src_lang, true), EscapeText(tgt_lang, true));
  const Segment* open = nullptr;
  for (const Segment& seg : segments) {
    if (open == nullptr || open->doc_id != seg.doc_id ||
        open->orig_lang != seg.orig_lang) {
      if (open != nullptr) out += "</doc>\n";
      out += side == SgmSide::kReference ? "<doc sysid=\"ref\"" : "<doc";
      out += fmt::format(" docid=\"{}\"", EscapeText(seg.doc_id, true));
      if (seg.orig_lang != kUnknownOrigin) {
        out += fmt::format(" origlang=\"{}\"", EscapeText(seg.orig_lang, true));
      }
      out += ">\n";
      open = &seg;
    }
    out += fmt::format("<seg id=\"{}\">{}</seg>\n", EscapeText(seg.seg_id, true),
                       EscapeText(seg.text, false));
  }
  if (open != nullptr) out += "</doc>\n";
  out += fmt::format("</{}>\n", wrapper);
  return out;
}

std::vector<std::string> TestSet::ReferenceTexts() const {
  std::vector<std::string> out;
  out.reserve(reference.size());
  for (const auto& s : reference) out.push_back(s.text);
  return out;
}

std::vector<std::string> TestSet::SourceTexts() const {
  std::vector<std::string> out;
  out.reserve(source.size());
  for (const auto& s : source) out.push_back(s.text);
  return out;
}

TestSet AlignTestSet(std::string name, std::string src_lang, std::string tgt_lang,
                     std::vector<Segment> source, std::vector<Segment> reference,
                     std::optional<std::vector<std::string>> hypothesis) {
  if (source.size() != reference.size()) {
    throw DataError(fmt::format("source has {} segments but reference has {}",
                                source.size(), reference.size()));
  }
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (source[i].doc_id != reference[i].doc_id ||
        source[i].seg_id != reference[i].seg_id) {
      throw DataError(fmt::format(
          "segment {} misaligned: source (docid={}, id={}) vs reference "
          "(docid={}, id={})",
          i, source[i].doc_id, source[i].seg_id, reference[i].doc_id,
          reference[i].seg_id));
    }
  }
  if (hypothesis && hypothesis->size() != source.size()) {
    throw DataError(fmt::format("hypothesis has {} lines but test set has {}",
                                hypothesis->size(), source.size()));
  }
  return TestSet{std::move(name),      std::move(src_lang),  std::move(tgt_lang),
                 std::move(source),    std::move(reference), std::move(hypothesis)};
}

TestSet LoadPlainTestSet(std::string name, std::string src_lang, std::string tgt_lang,
                         std::vector<std::string> source_lines,
                         std::vector<std::string> reference_lines,
                         const std::vector<std::string>& origin_labels) {
  if (origin_labels.size() != source_lines.size()) {
    throw DataError(fmt::format("origin labels have {} lines but source has {}",
                                origin_labels.size(), source_lines.size()));
  }
  auto make = [&](std::vector<std::string>& lines) {
    std::vector<Segment> segs(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
      segs[i].seg_id = std::to_string(i + 1);
      segs[i].doc_id = name;
      segs[i].orig_lang = NormalizeOrigin(i < origin_labels.size() ? origin_labels[i] : "");
      segs[i].text = std::move(lines[i]);
    }
    return segs;
  };
  std::vector<Segment> src = make(source_lines);
  std::vector<Segment> ref = make(reference_lines);
  return AlignTestSet(std::move(name), std::move(src_lang), std::move(tgt_lang),
                      std::move(src), std::move(ref));
}

bool SplitHalves::IsTargetOriginal(std::size_t i) const {
  return std::binary_search(target_original.begin(), target_original.end(), i);
}

SplitHalves SplitByOrigin(std::span<const Segment> source, std::string_view src_lang,
                          std::string_view tgt_lang) {
  const std::string src = NormalizeOrigin(src_lang);
  const std::string tgt = NormalizeOrigin(tgt_lang);
  SplitHalves halves;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const std::string& o = source[i].orig_lang;
    if (o == tgt && o != kUnknownOrigin) {
      halves.target_original.push_back(i);
    } else if (o == src && o != kUnknownOrigin) {
      halves.source_original.push_back(i);
    } else {
      halves.unknown.push_back(i);
    }
  }
  return halves;
}

std::vector<std::string> MergeSelective(std::span<const std::string> base,
                                        std::span<const std::string> edited,
                                        const SplitHalves& halves, MergeMode mode) {
  if (base.size() != edited.size()) {
    throw DataError(fmt::format("base has {} lines but edited has {}", base.size(),
                                edited.size()));
  }
  if (mode == MergeMode::kAll) return {edited.begin(), edited.end()};
  std::vector<std::string> out(base.begin(), base.end());
  for (std::size_t i : halves.target_original) {
    if (i >= out.size()) {
      throw DataError(fmt::format("target-original index {} out of range for {} lines",
                                  i, out.size()));
    }
    out[i] = edited[i];
  }
  return out;
}

nlohmann::json ToJson(const SplitHalves& halves) {
  return {{"source_original", halves.source_original},
          {"target_original", halves.target_original},
          {"unknown", halves.unknown},
          {"counts",
           {{"source_original", halves.source_original.size()},
            {"target_original", halves.target_original.size()},
            {"unknown", halves.unknown.size()},
            {"total", halves.total()}}}};
}

SplitHalves SplitHalvesFromJson(const nlohmann::json& j) {
  SplitHalves h;
  try {
    h.source_original = j.at("source_original").get<std::vector<std::size_t>>();
    h.target_original = j.at("target_original").get<std::vector<std::size_t>>();
    if (j.contains("unknown")) h.unknown = j.at("unknown").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed split file: ") + e.what());
  }
  std::sort(h.source_original.begin(), h.source_original.end());
  std::sort(h.target_original.begin(), h.target_original.end());
  std::sort(h.unknown.begin(), h.unknown.end());
  return h;
}

}  // namespace rttape
