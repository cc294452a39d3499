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


#ifndef RTTAPE_TESTS_SUPPORT_SYNTHETIC_H_
#define RTTAPE_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rttape/backends.h"
#include "rttape/testset.h"

namespace rttape::testing {

// German-like news sentences. Several slots draw from groups of natural
// synonyms ("empfängt" / "bekommt"), which the translationese lexicon
// collapses onto one word ("erhält").
std::vector<std::string> NaturalGermanLines(std::size_t n, std::uint64_t seed);

// de -> de channel that replaces natural synonyms with the translationese
// choice, plus optional deletions and swaps. The inverse lexicon restores
// one designated natural word per group.
ChannelConfig TranslationeseChannel(std::uint64_t seed, double drop_prob,
                                    double swap_prob);

// Round trip through English: de -> en maps every synonym of a group (and a
// few function words) to one English word, en -> de maps it back to the
// translationese choice.
ChannelConfig GermanToEnglish(std::uint64_t seed);
ChannelConfig EnglishToGerman(std::uint64_t seed, double drop_prob,
                              double swap_prob);

// The desk-scale origin-split experiment. Lines alternate in blocks of 10
// between German-original ("de") and English-original ("en") documents.
struct OriginSplitSetup {
  std::vector<std::string> natural;
  std::vector<std::string> origins;
  // Target-original half: the natural lines. Source-original half: the
  // natural lines passed through the "human translator" channel.
  std::vector<std::string> references;
  // Every line passed through the noisier "MT" channel.
  std::vector<std::string> mt_output;
  ChannelConfig human;
  ChannelConfig mt;
  TestSet test_set;
};

OriginSplitSetup MakeOriginSplitSetup(std::size_t n, std::uint64_t seed);

}  // namespace rttape::testing

#endif  // RTTAPE_TESTS_SUPPORT_SYNTHETIC_H_
