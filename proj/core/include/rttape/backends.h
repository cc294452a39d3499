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

#ifndef RTTAPE_BACKENDS_H_
#define RTTAPE_BACKENDS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace rttape {

enum class BackendKind { kCommand, kHttp, kToyChannel, kToyDenoiser, kIdentity };

std::string_view ToString(BackendKind kind);
BackendKind BackendKindFromString(std::string_view name);

struct Direction {
  std::string from;
  std::string to;
  bool operator==(const Direction&) const = default;
};

// Deterministic stand-in for an MT system. The lexicon may be many-to-one,
// which loses lexical variety the way real round trips do. The inverse
// lexicon is only used by the denoiser; for many-to-one entries it names the
// natural word to restore.
struct ChannelConfig {
  std::map<std::string, std::string> lexicon;
  std::map<std::string, std::string> inverse_lexicon;
  double drop_prob = 0.0;
  double swap_prob = 0.0;
  std::uint64_t seed = 0;

  // Probabilities in [0, 1]; lexicon entries are single whitespace-free
  // tokens; the inverse lexicon never maps to one of its own keys (so the
  // denoiser is idempotent).
  void Validate() const;
};

// `{from}` and `{to}` in the template are replaced by the direction's
// languages. The process reads one line per input line on stdin and must
// write exactly one line per input line to stdout.
struct CommandConfig {
  std::string command_template;
};

// POST {"lines": [...]} -> {"lines": [...]}.
struct HttpConfig {
  std::string url;
  double timeout_s = 60.0;
};

struct BackendSpec {
  BackendKind kind = BackendKind::kIdentity;
  Direction direction;
  std::variant<std::monostate, CommandConfig, HttpConfig, ChannelConfig> config;
  std::size_t batch_size = 64;
  int retries = 2;

  static BackendSpec Identity(std::string from, std::string to);
  static BackendSpec ToyChannel(ChannelConfig cfg, std::string from, std::string to);
  static BackendSpec ToyDenoiser(ChannelConfig cfg, std::string lang);
  static BackendSpec Command(std::string command_template, std::string from,
                             std::string to);
  static BackendSpec Http(std::string url, std::string from, std::string to,
                          double timeout_s = 60.0);

  const ChannelConfig& channel() const;

  // Throws DataError if the spec is incomplete or inconsistent.
  void Validate() const;

  // Stable hash of everything that influences outputs (not retries or
  // timeouts).
  std::string Fingerprint() const;
};

nlohmann::json ToJson(const ChannelConfig& cfg);
ChannelConfig ChannelConfigFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const BackendSpec& spec);
BackendSpec BackendSpecFromJson(const nlohmann::json& j);

// Lexicon substitution per token, then seeded deletions, then seeded
// adjacent swaps. Randomness depends only on (cfg.seed, salt). Lines the
// channel does not touch are returned verbatim; otherwise tokens are joined
// with single spaces.
std::string ChannelApply(const ChannelConfig& cfg, std::string_view line,
                         std::uint64_t salt);

// Token-wise inverse substitution with cfg.inverse_lexicon.
std::string ToyDenoise(const ChannelConfig& cfg, std::string_view line);

struct TranslateOptions {
  unsigned jobs = 1;
  // Salt of lines[0] for the toy channel; line i uses salt_base + i.
  std::uint64_t salt_base = 0;
  // Explicit per-line salts; overrides salt_base when non-empty.
  std::vector<std::uint64_t> salts;
  // On-disk output cache for command and http backends.
  std::optional<std::filesystem::path> cache_dir;
};

// $RTT_APE_CACHE, else $XDG_CACHE_HOME/rttape, else ~/.cache/rttape.
std::filesystem::path DefaultCacheDir();

// One output line per input line, in order. Throws BackendError carrying the
// failing batch's index range after retries are exhausted.
std::vector<std::string> TranslateBatch(const BackendSpec& spec,
                                        std::span<const std::string> lines,
                                        const TranslateOptions& options = {});

}  // namespace rttape

#endif  // RTTAPE_BACKENDS_H_
