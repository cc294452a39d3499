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


#include <atomic>
#include <cstdlib>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "rttape/backends.h"
#include "rttape/errors.h"
#include "rttape/io.h"
#include "rttape/unicode.h"
#include "support/synthetic.h"
#include "support/test_util.h"

namespace rttape {
namespace {

using Strings = std::vector<std::string>;

ChannelConfig Lexicon(std::map<std::string, std::string> lex) {
  ChannelConfig cfg;
  cfg.lexicon = std::move(lex);
  return cfg;
}

TEST(Identity, ReturnsInputVerbatim) {
  const Strings in = {"x", "y", "  padded  ", ""};
  EXPECT_EQ(TranslateBatch(BackendSpec::Identity("de", "en"), in), in);
}

TEST(ToyChannel, LexiconExamples) {
  const auto de_en = BackendSpec::ToyChannel(
      Lexicon({{"empfängt", "receives"}, {"erhält", "receives"}}), "de", "en");
  EXPECT_EQ(TranslateBatch(de_en, Strings{"Obama empfängt Netanjahu"}),
            Strings{"Obama receives Netanjahu"});
  const auto en_de = BackendSpec::ToyChannel(Lexicon({{"receives", "erhält"}}), "en", "de");
  EXPECT_EQ(TranslateBatch(en_de, Strings{"Obama receives Netanjahu"}),
            Strings{"Obama erhält Netanjahu"});
  EXPECT_EQ(ChannelApply(Lexicon({{"gut", "fein"}}), "gut gut schlecht", 0), "fein fein schlecht");
}

TEST(ToyChannel, ZeroNoiseEmptyLexiconIsIdentity) {
  const ChannelConfig cfg;
  for (const std::string line : {"a  b", " lead", "", "x\ty", "Ünïcödé \u2014 ok"}) {
    EXPECT_EQ(ChannelApply(cfg, line, 3), line);
  }
}

TEST(ToyChannel, DeterministicPerSaltAndIndependentOfBatching) {
  const ChannelConfig cfg = testing::TranslationeseChannel(9, 0.2, 0.2);
  const Strings lines = testing::NaturalGermanLines(500, 4);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(ChannelApply(cfg, lines[i], i), ChannelApply(cfg, lines[i], i));
  }
  auto spec = BackendSpec::ToyChannel(cfg, "de", "de");
  const Strings reference = TranslateBatch(spec, lines);
  for (std::size_t batch : {1u, 7u, 1000u}) {
    for (unsigned jobs : {1u, 3u}) {
      spec.batch_size = batch;
      TranslateOptions opt;
      opt.jobs = jobs;
      EXPECT_EQ(TranslateBatch(spec, lines, opt), reference);
    }
  }
  // A line's output depends on its salt, not its position in the batch.
  TranslateOptions shifted;
  shifted.salt_base = 100;
  const Strings tail(lines.begin() + 100, lines.end());
  EXPECT_EQ(TranslateBatch(spec, tail, shifted), Strings(reference.begin() + 100, reference.end()));
}

TEST(ToyChannel, NoiseActuallyHappens) {
  const ChannelConfig cfg = testing::TranslationeseChannel(1, 0.3, 0.3);
  const Strings lines = testing::NaturalGermanLines(200, 8);
  std::size_t changed_len = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (unicode::CountWhitespaceTokens(ChannelApply(cfg, lines[i], i)) !=
        unicode::CountWhitespaceTokens(lines[i])) {
      ++changed_len;
    }
  }
  EXPECT_GT(changed_len, 100u);
  ChannelConfig all_drop;
  all_drop.drop_prob = 1.0;
  EXPECT_EQ(ChannelApply(all_drop, "a b c", 0), "");
}

TEST(ToyChannel, ManyToOneLexiconShrinksVocabulary) {
  const ChannelConfig cfg = testing::TranslationeseChannel(2, 0.0, 0.1);
  const Strings lines = testing::NaturalGermanLines(1000, 5);
  std::set<std::string> in_vocab, out_vocab, range;
  for (const auto& [_, v] : cfg.lexicon) range.insert(v);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (auto t : unicode::SplitWhitespace(lines[i])) in_vocab.emplace(t);
    const std::string out = ChannelApply(cfg, lines[i], i);
    for (auto t : unicode::SplitWhitespace(out)) out_vocab.emplace(t);
  }
  for (const auto& t : out_vocab) EXPECT_TRUE(in_vocab.count(t) || range.count(t)) << t;
  EXPECT_LT(out_vocab.size(), in_vocab.size());
}

TEST(ToyDenoiser, Examples) {
  ChannelConfig cfg;
  cfg.inverse_lexicon = {{"erhält", "empfängt"}};
  EXPECT_EQ(ToyDenoise(cfg, "Obama erhält Netanjahu"), "Obama empfängt Netanjahu");
  EXPECT_EQ(ToyDenoise(cfg, "nothing  to do"), "nothing  to do");
  const ChannelConfig full = testing::TranslationeseChannel(0, 0, 0);
  for (const auto& line : testing::NaturalGermanLines(300, 1)) {
    const std::string once = ToyDenoise(full, ChannelApply(full, line, 0));
    EXPECT_EQ(ToyDenoise(full, once), once);
  }
}

TEST(ChannelConfig, Validation) {
  ChannelConfig cfg;
  cfg.drop_prob = 1.5;
  EXPECT_THROW(cfg.Validate(), DataError);
  cfg = Lexicon({{"two words", "x"}});
  EXPECT_THROW(cfg.Validate(), DataError);
  cfg = {};
  cfg.inverse_lexicon = {{"a", "b"}, {"b", "c"}};
  EXPECT_THROW(cfg.Validate(), DataError);
}

TEST(BackendSpec, JsonRoundTripAndFingerprint) {
  const auto spec = BackendSpec::ToyDenoiser(testing::TranslationeseChannel(3, 0, 0), "de");
  const BackendSpec back = BackendSpecFromJson(ToJson(spec));
  EXPECT_EQ(back.kind, BackendKind::kToyDenoiser);
  EXPECT_EQ(back.direction, (Direction{"de", "de"}));
  EXPECT_EQ(back.channel().inverse_lexicon, spec.channel().inverse_lexicon);
  EXPECT_EQ(back.Fingerprint(), spec.Fingerprint());

  auto retried = spec;
  retried.retries = 9;
  EXPECT_EQ(retried.Fingerprint(), spec.Fingerprint());
  auto other = BackendSpec::ToyDenoiser(testing::TranslationeseChannel(4, 0, 0), "de");
  EXPECT_NE(other.Fingerprint(), spec.Fingerprint());

  EXPECT_THROW(BackendSpecFromJson({{"kind", "warp_drive"}}), DataError);
  EXPECT_THROW(BackendSpecFromJson({{"kind", "command"}, {"from", "de"}, {"to", "en"}}), DataError);
  EXPECT_THROW(BackendSpec::Identity("", "en").Validate(), DataError);
}

TEST(CommandBackend, LinesOnStdinAndStdout) {
  const auto spec = BackendSpec::Command("sed 's/^/{from}-{to}: /'", "de", "en");
  const Strings in = {"eins", "", "drei ü"};
  EXPECT_EQ(TranslateBatch(spec, in), (Strings{"de-en: eins", "de-en: ", "de-en: drei ü"}));
}

TEST(CommandBackend, FailureCarriesBatchRange) {
  auto spec = BackendSpec::Command("awk 'NR==1 && /bad/ {exit 1} {print}'", "de", "en");
  spec.batch_size = 4;
  spec.retries = 1;
  Strings in(10, "ok");
  in[5] = "bad";
  in[4] = "bad";
  try {
    TranslateBatch(spec, in);
    FAIL() << "expected BackendError";
  } catch (const BackendError& e) {
    EXPECT_EQ(e.begin(), 4u);
    EXPECT_EQ(e.end(), 8u);
  }
}

TEST(CommandBackend, LengthMismatchIsAnError) {
  const auto spec = BackendSpec::Command("head -n 1", "de", "en");
  EXPECT_THROW(TranslateBatch(spec, Strings{"a", "b"}), BackendError);
}

TEST(CommandBackend, CacheMakesRerunsFree) {
  testing::TempDir tmp;
  const std::string counter = tmp / "calls";
  auto spec = BackendSpec::Command("echo x >> '" + counter + "'; tr a-z A-Z", "de", "en");
  spec.batch_size = 2;
  TranslateOptions opt;
  opt.cache_dir = tmp.path() / "cache";
  const Strings in = {"a", "b", "c"};
  EXPECT_EQ(TranslateBatch(spec, in, opt), (Strings{"A", "B", "C"}));
  EXPECT_EQ(ReadLines(counter).size(), 2u);
  EXPECT_EQ(TranslateBatch(spec, in, opt), (Strings{"A", "B", "C"}));
  EXPECT_EQ(ReadLines(counter).size(), 2u);
  EXPECT_TRUE(std::filesystem::exists(tmp.path() / "cache" / "v1" / spec.Fingerprint() / "spec.json"));
}

TEST(DefaultCacheDir, EnvironmentOverride) {
  const char* old = std::getenv("RTT_APE_CACHE");
  const std::string saved = old ? old : "";
  ::setenv("RTT_APE_CACHE", "/tmp/rtt-ape-cache-test", 1);
  EXPECT_EQ(DefaultCacheDir(), std::filesystem::path("/tmp/rtt-ape-cache-test"));
  if (old) {
    ::setenv("RTT_APE_CACHE", saved.c_str(), 1);
  } else {
    ::unsetenv("RTT_APE_CACHE");
  }
}

class HttpBackendTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/translate", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      auto lines = nlohmann::json::parse(req.body).at("lines").get<Strings>();
      for (auto& l : lines) l = "[" + l + "]";
      res.set_content(nlohmann::json{{"lines", lines}}.dump(), "application/json");
    });
    server_.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
      res.status = 500;
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  std::string Url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
};

TEST_F(HttpBackendTest, PostsJsonBatches) {
  auto spec = BackendSpec::Http(Url("/translate"), "de", "en", 5.0);
  spec.batch_size = 2;
  EXPECT_EQ(TranslateBatch(spec, Strings{"a", "b", "c"}), (Strings{"[a]", "[b]", "[c]"}));
  EXPECT_EQ(requests_.load(), 2);
}

TEST_F(HttpBackendTest, ServerErrorsBecomeBackendErrors) {
  auto spec = BackendSpec::Http(Url("/broken"), "de", "en", 5.0);
  spec.retries = 0;
  EXPECT_THROW(TranslateBatch(spec, Strings{"a"}), BackendError);
}

}  // namespace
}  // namespace rttape
