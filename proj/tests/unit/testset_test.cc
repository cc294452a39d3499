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
#include <numeric>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rttape/errors.h"
#include "rttape/io.h"
#include "rttape/random.h"
#include "rttape/testset.h"
#include "support/test_util.h"

namespace rttape {
namespace {

using Strings = std::vector<std::string>;

TEST(ParseSgm, SingleSegment) {
  const auto segs =
      ParseSgm(R"(<doc docid="d1" origlang="de"><seg id="1">Guten Tag</seg></doc>)", SgmSide::kSource);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0], (Segment{"1", "d1", "de", "Guten Tag"}));
}

TEST(ParseSgm, EntitiesAndMissingOrigin) {
  const auto segs = ParseSgm(R"(<doc docid="d2"><seg id="1">a &amp; b</seg></doc>)", SgmSide::kSource);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].text, "a & b");
  EXPECT_EQ(segs[0].orig_lang, "unknown");
}

TEST(ParseSgm, LenientInput) {
  const std::string raw =
      "<srcset setid=t srclang=any>\n"
      "<DOC docid=x.1 origlang=EN genre='news'>\n<p>\n"
      "<seg id=1>  Tom & Jerry &lt;3 &#x41;&#66; &apos;q&quot;  </seg>\n"
      "<SEG ID='2'>\n second\n</SEG>\n"
      "</p></doc>\n</srcset>\n";
  const SgmDocument doc = ParseSgmDocument(raw, SgmSide::kSource);
  EXPECT_EQ(doc.set_id, "t");
  ASSERT_EQ(doc.segments.size(), 2u);
  EXPECT_EQ(doc.segments[0].text, "Tom & Jerry <3 AB 'q\"");
  EXPECT_EQ(doc.segments[0].orig_lang, "en");
  EXPECT_EQ(doc.segments[0].doc_id, "x.1");
  EXPECT_EQ(doc.segments[1].seg_id, "2");
  EXPECT_EQ(doc.segments[1].text, "second");
}

std::size_t ErrorOffset(const std::string& raw) {
  try {
    ParseSgm(raw, SgmSide::kSource);
  } catch (const ParseError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "no ParseError for: " << raw;
  return 0;
}

TEST(ParseSgm, Errors) {
  EXPECT_EQ(ErrorOffset("no segments here"), 16u);
  EXPECT_EQ(ErrorOffset(R"(<doc docid="a"><doc docid="b"><seg id="1">x</seg></doc></doc>)"), 15u);
  EXPECT_EQ(ErrorOffset(R"(<seg id="1">x</seg></doc>)"), 0u);
  EXPECT_EQ(ErrorOffset(R"(<doc docid="a"><seg id="1">x</seg>)"), 0u);
  EXPECT_EQ(ErrorOffset(R"(<doc docid="a"><seg id="1">x</doc>)"), 15u);
  EXPECT_EQ(ErrorOffset(R"(<doc docid="a"><seg>x</seg></doc>)"), 15u);
  EXPECT_EQ(ErrorOffset(R"(<doc docid="a"><seg id="1">x</seg><seg id="1">y</seg></doc>)"), 34u);
  EXPECT_THROW(ParseSgm("</doc>", SgmSide::kSource), ParseError);
  EXPECT_THROW(ParseSgm("", SgmSide::kSource), DataError);
}

std::vector<Segment> RandomSegments(Rng& rng) {
  static const Strings kTexts = {"Guten Tag", "a & b", "x < y > z", "\"quoted\" 'single'",
                                 "Straße \u2014 3,5 %", "tab\tinside", "&amp; literal", "ü"};
  static const Strings kOrigins = {"de", "en", "unknown", "cs"};
  std::vector<Segment> segs;
  const std::size_t n = 1 + rng.Below(30);
  int doc = 0, seg = 0;
  std::string origin = "de";
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || rng.Below(4) == 0) {
      ++doc;
      seg = 0;
      origin = kOrigins[rng.Below(kOrigins.size())];
    }
    segs.push_back({std::to_string(++seg), "doc" + std::to_string(doc), origin,
                    kTexts[rng.Below(kTexts.size())]});
  }
  return segs;
}

TEST(SerializeSgm, RoundTripsExactly) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto segs = RandomSegments(rng);
    for (SgmSide side : {SgmSide::kSource, SgmSide::kReference, SgmSide::kHypothesis}) {
      const std::string sgm = SerializeSgm(segs, side, "set", "en", "de");
      ASSERT_EQ(ParseSgm(sgm, side), segs) << sgm;
      // canonical output is a fixed point
      ASSERT_EQ(SerializeSgm(ParseSgm(sgm, side), side, "set", "en", "de"), sgm);
    }
  }
}

TEST(SerializeSgm, CanonicalForm) {
  const std::vector<Segment> segs = {{"1", "d", "de", "a & b"}, {"2", "d", "de", "c"}};
  const std::string sgm = SerializeSgm(segs, SgmSide::kReference, "s", "en", "de");
  EXPECT_NE(sgm.find(R"(<refset setid="s" srclang="en" trglang="de">)"), std::string::npos);
  EXPECT_NE(sgm.find(R"(<doc sysid="ref" docid="d" origlang="de">)"), std::string::npos);
  EXPECT_NE(sgm.find(R"(<seg id="1">a &amp; b</seg>)"), std::string::npos);
}

std::vector<Segment> WithOrigins(const Strings& origins) {
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < origins.size(); ++i) {
    segs.push_back({std::to_string(i + 1), "d", origins[i], "t"});
  }
  return segs;
}

TEST(SplitByOrigin, Examples) {
  SplitHalves h = SplitByOrigin(WithOrigins({"en", "de", "en", "de"}), "en", "de");
  EXPECT_EQ(h.source_original, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(h.target_original, (std::vector<std::size_t>{1, 3}));
  EXPECT_TRUE(h.unknown.empty());

  h = SplitByOrigin(WithOrigins({"de", "de", "de"}), "en", "de");
  EXPECT_EQ(h.target_original, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(h.source_original.empty());

  h = SplitByOrigin(WithOrigins({"cs", "unknown", "en"}), "en", "de");
  EXPECT_EQ(h.unknown, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(h.source_original, (std::vector<std::size_t>{2}));
}

TEST(SplitByOrigin, PartitionsTheIndices) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto segs = RandomSegments(rng);
    const SplitHalves h = SplitByOrigin(segs, "en", "de");
    std::vector<std::size_t> all;
    for (const auto* part : {&h.source_original, &h.target_original, &h.unknown}) {
      ASSERT_TRUE(std::is_sorted(part->begin(), part->end()));
      all.insert(all.end(), part->begin(), part->end());
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(segs.size());
    std::iota(expected.begin(), expected.end(), 0);
    ASSERT_EQ(all, expected);
  }
}

TEST(SplitByOrigin, PinnedFixture) {
  const auto segs = ParseSgm(ReadFile(testing::FixturePath("sgm/newstest-mini-src.en.sgm")),
                             SgmSide::kSource);
  ASSERT_EQ(segs.size(), 20u);
  const auto expected =
      SplitHalvesFromJson(nlohmann::json::parse(ReadFile(testing::FixturePath("sgm/expected_split.json"))));
  const SplitHalves h = SplitByOrigin(segs, "en", "de");
  EXPECT_EQ(h.source_original, expected.source_original);
  EXPECT_EQ(h.target_original, expected.target_original);
  EXPECT_EQ(h.unknown, expected.unknown);
}

TEST(SplitHalves, JsonRoundTrip) {
  SplitHalves h{{0, 3}, {1}, {2}};
  const auto j = ToJson(h);
  EXPECT_EQ(j["counts"]["total"], 4);
  const SplitHalves back = SplitHalvesFromJson(j);
  EXPECT_EQ(back.source_original, h.source_original);
  EXPECT_EQ(back.target_original, h.target_original);
  EXPECT_EQ(back.unknown, h.unknown);
  EXPECT_TRUE(back.IsTargetOriginal(1));
  EXPECT_FALSE(back.IsTargetOriginal(2));
}

TEST(MergeSelective, Examples) {
  const Strings base = {"b0", "b1", "b2", "b3"}, edited = {"e0", "e1", "e2", "e3"};
  const SplitHalves h{{0, 2}, {1, 3}, {}};
  EXPECT_EQ(MergeSelective(base, edited, h, MergeMode::kTargetOriginalOnly),
            (Strings{"b0", "e1", "b2", "e3"}));
  EXPECT_EQ(MergeSelective(base, edited, h, MergeMode::kAll), edited);
  for (MergeMode m : {MergeMode::kAll, MergeMode::kTargetOriginalOnly}) {
    EXPECT_EQ(MergeSelective(base, base, h, m), base);
    EXPECT_EQ(MergeSelective(base, base, SplitHalves{}, m), base);
  }
  EXPECT_THROW(MergeSelective(base, Strings{"x"}, h, MergeMode::kAll), DataError);
  EXPECT_THROW(MergeSelective(base, edited, SplitHalves{{}, {7}, {}}, MergeMode::kTargetOriginalOnly),
               DataError);
}

TEST(TestSetLoading, AlignmentChecksIds) {
  const auto src = WithOrigins({"en", "de"});
  auto ref = src;
  EXPECT_EQ(AlignTestSet("t", "en", "de", src, ref).size(), 2u);
  ref[1].seg_id = "9";
  EXPECT_THROW(AlignTestSet("t", "en", "de", src, ref), DataError);
  EXPECT_THROW(AlignTestSet("t", "en", "de", src, {ref[0]}), DataError);
  EXPECT_THROW(AlignTestSet("t", "en", "de", src, src, Strings{"only one"}), DataError);
}

TEST(TestSetLoading, PlainTextWithSidecar) {
  const TestSet ts = LoadPlainTestSet("plain", "en", "de", {"s1", "s2", "s3"}, {"r1", "r2", "r3"},
                                      {"DE ", "en", ""});
  EXPECT_EQ(ts.source[0].orig_lang, "de");
  EXPECT_EQ(ts.source[2].orig_lang, "unknown");
  EXPECT_EQ(ts.source[1].seg_id, "2");
  EXPECT_EQ(ts.source[1].doc_id, "plain");
  EXPECT_EQ(ts.ReferenceTexts(), (Strings{"r1", "r2", "r3"}));
  EXPECT_THROW(LoadPlainTestSet("p", "en", "de", {"a"}, {"b"}, {"de", "en"}), DataError);
}

}  // namespace
}  // namespace rttape
