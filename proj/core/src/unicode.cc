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

#include "rttape/unicode.h"

#include <algorithm>
#include <array>

namespace rttape::unicode {
namespace {

struct CodepointRange {
  CodePoint lo;
  CodePoint hi;
};

#include "unicode_tables.inc"

template <std::size_t N>
bool InRanges(const CodepointRange (&table)[N], CodePoint cp) {
  auto it = std::upper_bound(
      std::begin(table), std::end(table), cp,
      [](CodePoint v, const CodepointRange& r) { return v < r.lo; });
  if (it == std::begin(table)) return false;
  --it;
  return cp <= it->hi;
}

enum : std::uint8_t { kPunct = 1, kSym = 2, kDigit = 4, kSpace = 8 };

constexpr std::array<std::uint8_t, 128> BuildAsciiTable() {
  std::array<std::uint8_t, 128> t{};
  for (CodePoint c = 0; c < 128; ++c) {
    std::uint8_t bits = 0;
    for (const auto& r : kPunctuation)
      if (c >= r.lo && c <= r.hi) bits |= kPunct;
    for (const auto& r : kSymbol)
      if (c >= r.lo && c <= r.hi) bits |= kSym;
    for (const auto& r : kDecimalDigit)
      if (c >= r.lo && c <= r.hi) bits |= kDigit;
    for (const auto& r : kWhitespace)
      if (c >= r.lo && c <= r.hi) bits |= kSpace;
    t[c] = bits;
  }
  return t;
}

constexpr std::array<std::uint8_t, 128> kAscii = BuildAsciiTable();

// Decodes one code point starting at s[i]; returns the byte length consumed.
std::size_t DecodeOne(std::string_view s, std::size_t i, CodePoint& cp) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  }
  std::size_t len;
  CodePoint min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    cp = kRawByteBase + b0;
    return 1;
  }
  if (i + len > s.size()) {
    cp = kRawByteBase + b0;
    return 1;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      cp = kRawByteBase + b0;
      return 1;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    cp = kRawByteBase + b0;
    return 1;
  }
  return len;
}

}  // namespace

std::string_view TableVersion() { return kTableUnicodeVersion; }

std::vector<CodePoint> Decode(std::string_view utf8) {
  std::vector<CodePoint> out;
  out.reserve(utf8.size());
  for (std::size_t i = 0; i < utf8.size();) {
    CodePoint cp;
    i += DecodeOne(utf8, i, cp);
    out.push_back(cp);
  }
  return out;
}

void AppendUtf8(CodePoint cp, std::string& out) {
  if (cp >= kRawByteBase) {
    out.push_back(static_cast<char>(cp - kRawByteBase));
  } else if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string Encode(const std::vector<CodePoint>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (CodePoint cp : cps) AppendUtf8(cp, out);
  return out;
}

bool IsPunctuation(CodePoint cp) {
  if (cp < 128) return kAscii[cp] & kPunct;
  return cp < kRawByteBase && InRanges(kPunctuation, cp);
}

bool IsSymbol(CodePoint cp) {
  if (cp < 128) return kAscii[cp] & kSym;
  return cp < kRawByteBase && InRanges(kSymbol, cp);
}

bool IsDecimalDigit(CodePoint cp) {
  if (cp < 128) return kAscii[cp] & kDigit;
  return cp < kRawByteBase && InRanges(kDecimalDigit, cp);
}

bool IsWhitespace(CodePoint cp) {
  if (cp < 128) return kAscii[cp] & kSpace;
  return cp < kRawByteBase && InRanges(kWhitespace, cp);
}

std::size_t CountCodePoints(std::string_view utf8) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < utf8.size(); ++n) {
    CodePoint cp;
    i += DecodeOne(utf8, i, cp);
  }
  return n;
}

std::vector<std::string_view> SplitWhitespace(std::string_view utf8) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  bool in_token = false;
  for (std::size_t i = 0; i < utf8.size();) {
    CodePoint cp;
    const std::size_t len = DecodeOne(utf8, i, cp);
    if (IsWhitespace(cp)) {
      if (in_token) out.push_back(utf8.substr(start, i - start));
      in_token = false;
    } else if (!in_token) {
      start = i;
      in_token = true;
    }
    i += len;
  }
  if (in_token) out.push_back(utf8.substr(start));
  return out;
}

std::size_t CountWhitespaceTokens(std::string_view utf8) {
  std::size_t n = 0;
  bool in_token = false;
  for (std::size_t i = 0; i < utf8.size();) {
    CodePoint cp;
    i += DecodeOne(utf8, i, cp);
    const bool space = IsWhitespace(cp);
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

std::string_view TrimRight(std::string_view utf8) {
  std::size_t end = 0;
  for (std::size_t i = 0; i < utf8.size();) {
    CodePoint cp;
    i += DecodeOne(utf8, i, cp);
    if (!IsWhitespace(cp)) end = i;
  }
  return utf8.substr(0, end);
}

std::string_view Trim(std::string_view utf8) {
  std::size_t i = 0;
  while (i < utf8.size()) {
    CodePoint cp;
    const std::size_t len = DecodeOne(utf8, i, cp);
    if (!IsWhitespace(cp)) break;
    i += len;
  }
  return TrimRight(utf8.substr(i));
}

}  // namespace rttape::unicode
