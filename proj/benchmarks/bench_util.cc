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


#include "bench_util.h"

#include <cmath>
#include <utility>

#include "rttape/random.h"
#include "rttape/unicode.h"

namespace rttape::bench {
namespace {

const std::vector<std::string>& Vocabulary() {
  static const std::vector<std::string> words = [] {
    static const char* kSyl[] = {"ka", "ter", "ung", "ba", "lo", "ri", "sch", "en", "mi",
                                 "über", "ße", "da", "no", "wel", "gä", "ti"};
    std::vector<std::string> v;
    Rng rng(1);
    for (int i = 0; i < 5000; ++i) {
      std::string w;
      const auto syl = 1 + rng.Below(4);
      for (std::uint64_t k = 0; k < syl; ++k) w += kSyl[rng.Below(16)];
      if (rng.Bernoulli(0.15)) w[0] = static_cast<char>(w[0] - 'a' + 'A');
      v.push_back(std::move(w));
    }
    return v;
  }();
  return words;
}

std::size_t Zipf(Rng& rng, std::size_t n) {
  // inverse CDF of a continuous 1/x law
  return static_cast<std::size_t>(std::exp(rng.Uniform() * std::log(static_cast<double>(n)))) - 1;
}

std::string Line(Rng& rng) {
  static const char* kPunct[] = {",", ".", ":", "?", "!", "„", "“", "(", ")", "%", "€"};
  const auto& vocab = Vocabulary();
  std::string s;
  const auto len = 4 + rng.Below(30);
  for (std::uint64_t i = 0; i < len; ++i) {
    if (!s.empty()) s += ' ';
    if (rng.Bernoulli(0.05)) {
      s += std::to_string(rng.Below(10000));
      if (rng.Bernoulli(0.3)) s += "." + std::to_string(rng.Below(100));
    } else {
      s += vocab[Zipf(rng, vocab.size())];
    }
    if (rng.Bernoulli(0.1)) s += kPunct[rng.Below(11)];
  }
  s += '.';
  return s;
}

}  // namespace

std::vector<std::string> SyntheticLines(std::size_t n, std::uint64_t seed, double dup_rate) {
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.empty() && rng.Bernoulli(dup_rate)) {
      out.push_back(out[rng.Below(out.size())]);
    } else {
      out.push_back(Line(rng));
    }
  }
  return out;
}

std::vector<std::string> Perturbed(const std::vector<std::string>& lines, std::uint64_t seed) {
  Rng rng(seed);
  const auto& vocab = Vocabulary();
  std::vector<std::string> out;
  out.reserve(lines.size());
  for (const auto& line : lines) {
    std::vector<std::string> words;
    for (auto w : unicode::SplitWhitespace(line)) {
      const double u = rng.Uniform();
      if (u < 0.08) continue;
      words.emplace_back(u < 0.2 ? std::string_view(vocab[rng.Below(vocab.size())]) : w);
      if (words.size() > 1 && rng.Bernoulli(0.05)) {
        std::swap(words[words.size() - 1], words[words.size() - 2]);
      }
    }
    std::string s;
    for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace rttape::bench
