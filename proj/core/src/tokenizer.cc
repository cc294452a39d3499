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

#include <string>

#include "rttape/scoring.h"
#include "rttape/unicode.h"

namespace rttape {

using unicode::CodePoint;

TokenizedSentence TokenizeIntl(std::string_view text) {
  const std::vector<CodePoint> in = unicode::Decode(text);

  // The three substitutions scan left to right without overlap, exactly like
  // re.sub with a two-character (resp. one-character) pattern.
  //   ([^\d])(\p{P})  ->  "\1 \2 "
  std::vector<CodePoint> pass1;
  pass1.reserve(in.size() * 2);
  for (std::size_t i = 0; i < in.size();) {
    if (i + 1 < in.size() && !unicode::IsDecimalDigit(in[i]) &&
        unicode::IsPunctuation(in[i + 1])) {
      pass1.insert(pass1.end(), {in[i], ' ', in[i + 1], ' '});
      i += 2;
    } else {
      pass1.push_back(in[i++]);
    }
  }

  //   (\p{P})([^\d])  ->  " \1 \2"
  std::vector<CodePoint> pass2;
  pass2.reserve(pass1.size() * 2);
  for (std::size_t i = 0; i < pass1.size();) {
    if (i + 1 < pass1.size() && unicode::IsPunctuation(pass1[i]) &&
        !unicode::IsDecimalDigit(pass1[i + 1])) {
      pass2.insert(pass2.end(), {' ', pass1[i], ' ', pass1[i + 1]});
      i += 2;
    } else {
      pass2.push_back(pass1[i++]);
    }
  }

  //   (\p{S})  ->  " \1 "
  // fused with the final whitespace split.
  TokenizedSentence out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.tokens.push_back(std::move(current));
    current.clear();
  };
  for (CodePoint cp : pass2) {
    if (unicode::IsWhitespace(cp)) {
      flush();
    } else if (unicode::IsSymbol(cp)) {
      flush();
      unicode::AppendUtf8(cp, current);
      flush();
    } else {
      unicode::AppendUtf8(cp, current);
    }
  }
  flush();
  return out;
}

std::string JoinTokens(const TokenizedSentence& sentence) {
  std::string out;
  for (const auto& t : sentence.tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace rttape
