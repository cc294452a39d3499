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


#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rttape/analysis.h"
#include "rttape/backends.h"
#include "rttape/corpus.h"
#include "rttape/errors.h"
#include "rttape/pipeline.h"
#include "rttape/random.h"
#include "support/synthetic.h"

namespace rttape {
namespace {

using Strings = std::vector<std::string>;

TEST(VocabSize, Examples) {
  EXPECT_EQ(VocabSize(Strings{"a b", "b c"}), 3u);
  EXPECT_EQ(VocabSize(Strings{}), 0u);
  EXPECT_EQ(VocabSize(Strings{"A a"}), 2u);
  EXPECT_EQ(VocabSize(Strings{"Hallo, Welt!"}), 2u);
  EXPECT_EQ(VocabSize(Strings{"Hallo, Welt!"}, VocabTokenizer::kIntl), 4u);
}

TEST(VocabSize, OrderAndDedupInvariant) {
  Strings lines = testing::NaturalGermanLines(300, 2);
  const std::size_t v = VocabSize(lines);
  Strings doubled = lines;
  doubled.insert(doubled.end(), lines.begin(), lines.end());
  std::reverse(doubled.begin(), doubled.end());
  EXPECT_EQ(VocabSize(doubled), v);
  EXPECT_EQ(VocabSize(Dedup(doubled)), v);
}

TEST(RttQualityReport, IdentityIsPerfect) {
  const Strings lines = {"a b c d e", "f g h i"};
  const AnalysisReport r = RttQualityReport(lines, lines, {"de", "de", "rtt"});
  ASSERT_TRUE(r.rtt_bleu.has_value());
  EXPECT_EQ(r.rtt_bleu->score, 100.0);
  for (double p : r.rtt_bleu->precisions) EXPECT_EQ(p, 100.0);
  EXPECT_EQ(r.vocab_sizes.at("original"), r.vocab_sizes.at("round_trip"));
  EXPECT_THROW(RttQualityReport(lines, Strings{"x"}, {}), DataError);
}

TEST(RttQualityReport, ToyChannelPrecisionsDecrease) {
  const Strings natural = testing::NaturalGermanLines(1000, 31);
  const auto pairs = GenerateRtt(
      natural, BackendSpec::ToyChannel(testing::GermanToEnglish(5), "de", "en"),
      BackendSpec::ToyChannel(testing::EnglishToGerman(6, 0.1, 0.1), "en", "de"), {});
  Strings orig, rtt;
  for (const auto& p : pairs) {
    orig.push_back(p.original);
    rtt.push_back(p.round_trip);
  }
  const AnalysisReport r = RttQualityReport(orig, rtt, {"de", "de", "rtt"});
  const auto& p = r.rtt_bleu->precisions;
  EXPECT_GT(p[0], p[1]);
  EXPECT_GT(p[1], p[2]);
  EXPECT_GT(p[2], p[3]);
  for (double x : p) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 100.0);
  }
  EXPECT_LT(r.vocab_sizes.at("round_trip"), r.vocab_sizes.at("original"));
  // Reference scorer, tok.intl, on the same 1000 pairs.
  EXPECT_NEAR(r.rtt_bleu->score, 30.007859096682825, 1e-9);
  EXPECT_EQ(p[0], 74.59101725163593);
  EXPECT_EQ(p[3], 14.730091883614088);
  EXPECT_EQ(r.rtt_bleu->brevity_penalty, 0.9198847935651618);
  const auto j = r.ToJson();
  EXPECT_EQ(j["precision_breakdown"].size(), 4u);
  EXPECT_EQ(j["metadata"]["vocab_tokenizer"], "whitespace");
}

TEST(SplitScoreTable, PerfectHypothesis) {
  const auto setup = testing::MakeOriginSplitSetup(60, 1);
  const AnalysisReport r = SplitScoreTable(setup.test_set, {{"ref", setup.references}},
                                           {"en", "de", "synthetic"});
  for (const auto& [half, score] : r.split_scores.at("ref")) EXPECT_EQ(score.score, 100.0) << half;
  EXPECT_EQ(r.split_scores.at("ref").size(), 3u);
}

TEST(SplitScoreTable, CountsDecompose) {
  auto setup = testing::MakeOriginSplitSetup(95, 4);
  // some third-language lines
  for (std::size_t i = 0; i < setup.test_set.source.size(); i += 7) {
    setup.test_set.source[i].orig_lang = "cs";
  }
  const AnalysisReport r = SplitScoreTable(setup.test_set, {{"mt", setup.mt_output}},
                                           {"en", "de", "synthetic"});
  const auto& cells = r.split_scores.at("mt");
  const SplitHalves halves = SplitByOrigin(setup.test_set);
  const auto refs = setup.test_set.ReferenceTexts();
  NgramStats unknown;
  for (std::size_t i : halves.unknown) unknown += SentenceStats(setup.mt_output[i], refs[i]);
  EXPECT_EQ(cells.at("full").stats,
            cells.at("source_original").stats + cells.at("target_original").stats + unknown);
  EXPECT_EQ(r.metadata["segments"]["unknown"], halves.unknown.size());
}

TEST(SplitScoreTable, EmptyHalfIsOmittedAndRendered) {
  const TestSet ts = LoadPlainTestSet("t", "en", "de", {"s1", "s2"}, {"a b c d", "e f g h"}, {"de", "de"});
  const AnalysisReport r = SplitScoreTable(ts, {{"base", {"a b c d", "e f g x"}}}, {"en", "de", "t"});
  EXPECT_FALSE(r.split_scores.at("base").count("source_original"));
  const std::string table = r.RenderTable();
  EXPECT_NE(table.find("orig-de"), std::string::npos);
  EXPECT_NE(table.find("orig-en"), std::string::npos);
  EXPECT_NE(table.find("-\n"), std::string::npos);
  EXPECT_THROW(SplitScoreTable(ts, {{"short", {"x"}}}, {"en", "de", "t"}), DataError);
}

TEST(SplitScoreTable, SelectiveMergeComposition) {
  const auto setup = testing::MakeOriginSplitSetup(200, 8);
  const SplitHalves halves = SplitByOrigin(setup.test_set);
  const auto ape = ApplyApe(setup.mt_output, BackendSpec::ToyDenoiser(setup.mt, "de"), halves,
                            {ApeScope::kAll, 1});
  const auto merged =
      MergeSelective(setup.mt_output, ape.output, halves, MergeMode::kTargetOriginalOnly);
  const AnalysisReport r = SplitScoreTable(
      setup.test_set, {{"base", setup.mt_output}, {"ape", ape.output}, {"selective", merged}},
      {"en", "de", "synthetic"});
  const auto& s = r.split_scores;
  EXPECT_EQ(s.at("selective").at("target_original").score, s.at("ape").at("target_original").score);
  EXPECT_EQ(s.at("selective").at("source_original").score, s.at("base").at("source_original").score);
}

}  // namespace
}  // namespace rttape
