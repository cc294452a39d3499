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

#ifndef RTTAPE_UNICODE_H_
#define RTTAPE_UNICODE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rttape::unicode {

// Version of the Unicode character database the property tables were
// generated from.
std::string_view TableVersion();

// Decoded code point. Bytes that are not part of a valid UTF-8 sequence are
// carried through as kRawByteBase + byte so that re-encoding is lossless.
using CodePoint = std::uint32_t;
inline constexpr CodePoint kRawByteBase = 0x110000;

std::vector<CodePoint> Decode(std::string_view utf8);
void AppendUtf8(CodePoint cp, std::string& out);
std::string Encode(const std::vector<CodePoint>& cps);

// Property predicates, matching the character classes of the reference
// scorer's international tokenizer.
bool IsPunctuation(CodePoint cp);
bool IsSymbol(CodePoint cp);
bool IsDecimalDigit(CodePoint cp);
bool IsWhitespace(CodePoint cp);

// Number of Unicode scalar values; each invalid byte counts as one.
std::size_t CountCodePoints(std::string_view utf8);

// Splits on Unicode whitespace, dropping empty pieces.
std::vector<std::string_view> SplitWhitespace(std::string_view utf8);
std::size_t CountWhitespaceTokens(std::string_view utf8);

// Strips leading/trailing Unicode whitespace.
std::string_view Trim(std::string_view utf8);
std::string_view TrimRight(std::string_view utf8);

}  // namespace rttape::unicode

#endif  // RTTAPE_UNICODE_H_
