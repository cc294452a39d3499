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


#ifndef RTTAPE_BENCHMARKS_BENCH_UTIL_H_
#define RTTAPE_BENCHMARKS_BENCH_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rttape::bench {

// News-like lines over a Zipfian vocabulary with punctuation, digits and a
// sprinkling of non-ASCII. About `dup_rate` of the lines repeat earlier ones.
std::vector<std::string> SyntheticLines(std::size_t n, std::uint64_t seed,
                                        double dup_rate = 0.0);

// Word-level edit of each line: drops, substitutions, local swaps.
std::vector<std::string> Perturbed(const std::vector<std::string>& lines,
                                   std::uint64_t seed);

}  // namespace rttape::bench

#endif  // RTTAPE_BENCHMARKS_BENCH_UTIL_H_
