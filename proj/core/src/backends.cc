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

#include "rttape/backends.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include <fmt/format.h>
#include <httplib.h>

#include "rttape/errors.h"
#include "rttape/fingerprint.h"
#include "rttape/io.h"
#include "rttape/parallel.h"
#include "rttape/random.h"
#include "rttape/unicode.h"

namespace rttape {

namespace fs = std::filesystem;

std::string_view ToString(BackendKind kind) {
  switch (kind) {
    case BackendKind::kCommand: return "command";
    case BackendKind::kHttp: return "http";
    case BackendKind::kToyChannel: return "toy_channel";
    case BackendKind::kToyDenoiser: return "toy_denoiser";
    case BackendKind::kIdentity: return "identity";
  }
  return "?";
}

BackendKind BackendKindFromString(std::string_view name) {
  for (auto k : {BackendKind::kCommand, BackendKind::kHttp, BackendKind::kToyChannel,
                 BackendKind::kToyDenoiser, BackendKind::kIdentity}) {
    if (ToString(k) == name) return k;
  }
  throw DataError(fmt::format("unknown backend kind '{}'", name));
}

namespace {

bool IsSingleToken(std::string_view s) {
  const auto parts = unicode::SplitWhitespace(s);
  return parts.size() == 1 && parts[0].size() == s.size();
}

}  // namespace

void ChannelConfig::Validate() const {
  if (!(drop_prob >= 0.0 && drop_prob <= 1.0) || !(swap_prob >= 0.0 && swap_prob <= 1.0)) {
    throw DataError("channel probabilities must lie in [0, 1]");
  }
  for (const auto* table : {&lexicon, &inverse_lexicon}) {
    for (const auto& [k, v] : *table) {
      if (!IsSingleToken(k) || !IsSingleToken(v)) {
        throw DataError(fmt::format(
            "lexicon entry '{}' -> '{}' is not a single whitespace-free token", k, v));
      }
    }
  }
  for (const auto& [k, v] : inverse_lexicon) {
    auto it = inverse_lexicon.find(v);
    if (it != inverse_lexicon.end() && it->second != v) {
      throw DataError(fmt::format(
          "inverse lexicon maps '{}' to '{}', which is itself rewritten to '{}'", k, v,
          it->second));
    }
  }
}

BackendSpec BackendSpec::Identity(std::string from, std::string to) {
  BackendSpec s;
  s.kind = BackendKind::kIdentity;
  s.direction = {std::move(from), std::move(to)};
  return s;
}

BackendSpec BackendSpec::ToyChannel(ChannelConfig cfg, std::string from, std::string to) {
  BackendSpec s;
  s.kind = BackendKind::kToyChannel;
  s.direction = {std::move(from), std::move(to)};
  s.config = std::move(cfg);
  return s;
}

BackendSpec BackendSpec::ToyDenoiser(ChannelConfig cfg, std::string lang) {
  BackendSpec s;
  s.kind = BackendKind::kToyDenoiser;
  s.direction = {lang, lang};
  s.config = std::move(cfg);
  return s;
}

BackendSpec BackendSpec::Command(std::string command_template, std::string from,
                                 std::string to) {
  BackendSpec s;
  s.kind = BackendKind::kCommand;
  s.direction = {std::move(from), std::move(to)};
  s.config = CommandConfig{std::move(command_template)};
  return s;
}

BackendSpec BackendSpec::Http(std::string url, std::string from, std::string to,
                              double timeout_s) {
  BackendSpec s;
  s.kind = BackendKind::kHttp;
  s.direction = {std::move(from), std::move(to)};
  s.config = HttpConfig{std::move(url), timeout_s};
  return s;
}

const ChannelConfig& BackendSpec::channel() const {
  if (const auto* c = std::get_if<ChannelConfig>(&config)) return *c;
  throw DataError(fmt::format("{} backend has no channel config", ToString(kind)));
}

void BackendSpec::Validate() const {
  if (direction.from.empty() || direction.to.empty()) {
    throw DataError("backend direction must name both languages");
  }
  if (batch_size == 0) throw DataError("backend batch_size must be positive");
  if (retries < 0) throw DataError("backend retries must be >= 0");
  switch (kind) {
    case BackendKind::kIdentity:
      break;
    case BackendKind::kToyChannel:
    case BackendKind::kToyDenoiser:
      channel().Validate();
      break;
    case BackendKind::kCommand: {
      const auto* c = std::get_if<CommandConfig>(&config);
      if (c == nullptr || c->command_template.empty()) {
        throw DataError("command backend needs a command template");
      }
      break;
    }
    case BackendKind::kHttp: {
      const auto* h = std::get_if<HttpConfig>(&config);
      if (h == nullptr || h->url.empty()) throw DataError("http backend needs a url");
      if (!(h->timeout_s > 0)) throw DataError("http timeout must be positive");
      break;
    }
  }
}

nlohmann::json ToJson(const ChannelConfig& cfg) {
  return {{"lexicon", cfg.lexicon},
          {"inverse_lexicon", cfg.inverse_lexicon},
          {"drop_prob", cfg.drop_prob},
          {"swap_prob", cfg.swap_prob},
          {"seed", cfg.seed}};
}

ChannelConfig ChannelConfigFromJson(const nlohmann::json& j) {
  ChannelConfig cfg;
  try {
    cfg.lexicon = j.value("lexicon", std::map<std::string, std::string>{});
    cfg.inverse_lexicon = j.value("inverse_lexicon", std::map<std::string, std::string>{});
    cfg.drop_prob = j.value("drop_prob", 0.0);
    cfg.swap_prob = j.value("swap_prob", 0.0);
    cfg.seed = j.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed channel config: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

nlohmann::json ToJson(const BackendSpec& spec) {
  nlohmann::json j = {{"kind", ToString(spec.kind)},
                      {"from", spec.direction.from},
                      {"to", spec.direction.to},
                      {"batch_size", spec.batch_size},
                      {"retries", spec.retries}};
  if (const auto* c = std::get_if<ChannelConfig>(&spec.config)) j["channel"] = ToJson(*c);
  if (const auto* c = std::get_if<CommandConfig>(&spec.config)) {
    j["command"] = c->command_template;
  }
  if (const auto* h = std::get_if<HttpConfig>(&spec.config)) {
    j["url"] = h->url;
    j["timeout_s"] = h->timeout_s;
  }
  return j;
}

BackendSpec BackendSpecFromJson(const nlohmann::json& j) {
  BackendSpec spec;
  try {
    spec.kind = BackendKindFromString(j.at("kind").get<std::string>());
    spec.direction.from = j.value("from", std::string{});
    spec.direction.to = j.value("to", std::string{});
    spec.batch_size = j.value("batch_size", std::size_t{64});
    spec.retries = j.value("retries", 2);
    switch (spec.kind) {
      case BackendKind::kIdentity:
        break;
      case BackendKind::kToyChannel:
      case BackendKind::kToyDenoiser:
        spec.config = ChannelConfigFromJson(j.value("channel", nlohmann::json::object()));
        break;
      case BackendKind::kCommand:
        spec.config = CommandConfig{j.at("command").get<std::string>()};
        break;
      case BackendKind::kHttp:
        spec.config = HttpConfig{j.at("url").get<std::string>(), j.value("timeout_s", 60.0)};
        break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed backend spec: ") + e.what());
  }
  if (spec.kind == BackendKind::kToyDenoiser && spec.direction.to.empty()) {
    spec.direction.to = spec.direction.from;
  }
  spec.Validate();
  return spec;
}

std::string BackendSpec::Fingerprint() const {
  nlohmann::json j = ToJson(*this);
  j.erase("retries");
  j.erase("timeout_s");
  return Sha256Hex(j.dump());
}

std::string ChannelApply(const ChannelConfig& cfg, std::string_view line,
                         std::uint64_t salt) {
  const auto pieces = unicode::SplitWhitespace(line);
  std::vector<std::string> tokens;
  tokens.reserve(pieces.size());
  bool changed = false;
  for (auto p : pieces) {
    auto it = cfg.lexicon.find(std::string(p));
    if (it != cfg.lexicon.end() && it->second != p) {
      tokens.push_back(it->second);
      changed = true;
    } else {
      tokens.emplace_back(p);
    }
  }

  Rng rng(cfg.seed, salt);
  if (cfg.drop_prob > 0.0) {
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (auto& t : tokens) {
      if (rng.Bernoulli(cfg.drop_prob)) {
        changed = true;
      } else {
        kept.push_back(std::move(t));
      }
    }
    tokens = std::move(kept);
  }
  if (cfg.swap_prob > 0.0) {
    for (std::size_t i = 0; i + 1 < tokens.size();) {
      if (rng.Bernoulli(cfg.swap_prob)) {
        if (tokens[i] != tokens[i + 1]) changed = true;
        std::swap(tokens[i], tokens[i + 1]);
        i += 2;
      } else {
        ++i;
      }
    }
  }
  if (!changed) return std::string(line);
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::string ToyDenoise(const ChannelConfig& cfg, std::string_view line) {
  const auto pieces = unicode::SplitWhitespace(line);
  std::string out;
  bool changed = false;
  for (auto p : pieces) {
    if (!out.empty()) out.push_back(' ');
    auto it = cfg.inverse_lexicon.find(std::string(p));
    if (it != cfg.inverse_lexicon.end() && it->second != p) {
      out += it->second;
      changed = true;
    } else {
      out += p;
    }
  }
  return changed ? out : std::string(line);
}

fs::path DefaultCacheDir() {
  if (const char* env = std::getenv("RTT_APE_CACHE"); env != nullptr && *env != '\0') {
    return env;
  }
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return fs::path(xdg) / "rttape";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return fs::path(home) / ".cache" / "rttape";
  }
  return fs::temp_directory_path() / "rttape-cache";
}

namespace {

std::string ShellQuote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

std::string ExpandTemplate(std::string tpl, const Direction& d) {
  auto replace_all = [&](std::string_view key, const std::string& value) {
    for (std::size_t pos = 0; (pos = tpl.find(key, pos)) != std::string::npos;
         pos += value.size()) {
      tpl.replace(pos, key.size(), value);
    }
  };
  replace_all("{from}", d.from);
  replace_all("{to}", d.to);
  return tpl;
}

void CheckFramable(std::span<const std::string> lines) {
  for (const auto& l : lines) {
    if (l.find('\n') != std::string::npos) {
      throw std::runtime_error("input line contains a newline and cannot be framed");
    }
  }
}

std::vector<std::string> RunCommand(const CommandConfig& cfg, const Direction& dir,
                                    std::span<const std::string> lines) {
  CheckFramable(lines);
  std::string tmpl = (fs::temp_directory_path() / "rttape-cmd-XXXXXX").string();
  const int fd = ::mkstemp(tmpl.data());
  if (fd < 0) throw std::runtime_error("mkstemp failed");
  ::close(fd);
  const fs::path input = tmpl;
  struct Cleanup {
    fs::path p;
    ~Cleanup() {
      std::error_code ec;
      fs::remove(p, ec);
    }
  } cleanup{input};
  {
    std::ofstream f(input, std::ios::binary);
    for (const auto& l : lines) f << l << '\n';
    if (!f) throw std::runtime_error("cannot write command input");
  }

  const std::string cmd =
      "(" + ExpandTemplate(cfg.command_template, dir) + ") < " + ShellQuote(input.string());
  std::FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for: " + cmd);
  std::string output;
  char buf[1 << 14];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  const int status = ::pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw std::runtime_error(fmt::format("command exited with status {}: {}",
                                         WIFEXITED(status) ? WEXITSTATUS(status) : -1, cmd));
  }

  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < output.size()) {
    std::size_t nl = output.find('\n', start);
    if (nl == std::string::npos) nl = output.size();
    out.emplace_back(output, start, nl - start);
    start = nl + 1;
  }
  if (out.size() != lines.size()) {
    throw std::runtime_error(fmt::format(
        "command produced {} lines for {} input lines: {}", out.size(), lines.size(), cmd));
  }
  return out;
}

std::vector<std::string> RunHttp(const HttpConfig& cfg,
                                 std::span<const std::string> lines) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(cfg.url, m, kUrl)) {
    throw std::runtime_error("unsupported url: " + cfg.url);
  }
  httplib::Client client(m[1].str());
  const auto seconds = static_cast<time_t>(cfg.timeout_s);
  const auto usec = static_cast<time_t>((cfg.timeout_s - static_cast<double>(seconds)) * 1e6);
  client.set_connection_timeout(seconds, usec);
  client.set_read_timeout(seconds, usec);
  client.set_write_timeout(seconds, usec);

  const nlohmann::json body = {{"lines", std::vector<std::string>(lines.begin(), lines.end())}};
  const std::string path = m[2].matched ? m[2].str() : "/";
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) {
    throw std::runtime_error(fmt::format("POST {} failed: {}", cfg.url,
                                         httplib::to_string(res.error())));
  }
  if (res->status != 200) {
    throw std::runtime_error(fmt::format("POST {} returned HTTP {}", cfg.url, res->status));
  }
  std::vector<std::string> out;
  try {
    out = nlohmann::json::parse(res->body).at("lines").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(fmt::format("bad response from {}: {}", cfg.url, e.what()));
  }
  if (out.size() != lines.size()) {
    throw std::runtime_error(fmt::format("{} returned {} lines for {} input lines", cfg.url,
                                         out.size(), lines.size()));
  }
  return out;
}

// Cache layout: <dir>/v1/<spec fingerprint>/spec.json and
// <dir>/v1/<spec fingerprint>/<first two hex>/<input fingerprint>.json,
// the latter holding {"lines": [...]}.
class OutputCache {
 public:
  OutputCache(const fs::path& dir, const BackendSpec& spec)
      : root_(dir / "v1" / spec.Fingerprint()) {
    const fs::path spec_file = root_ / "spec.json";
    if (!fs::exists(spec_file)) {
      nlohmann::json j = ToJson(spec);
      j.erase("retries");
      WriteFileAtomic(spec_file, j.dump(2) + "\n");
    }
  }

  std::optional<std::vector<std::string>> Get(std::span<const std::string> lines) const {
    const fs::path p = PathFor(lines);
    std::error_code ec;
    if (!fs::exists(p, ec)) return std::nullopt;
    try {
      auto out = nlohmann::json::parse(ReadFile(p)).at("lines").get<std::vector<std::string>>();
      if (out.size() == lines.size()) return out;
    } catch (const std::exception&) {
      // Unreadable entries are recomputed and overwritten.
    }
    return std::nullopt;
  }

  void Put(std::span<const std::string> lines, const std::vector<std::string>& out) const {
    WriteFileAtomic(PathFor(lines), nlohmann::json{{"lines", out}}.dump());
  }

 private:
  fs::path PathFor(std::span<const std::string> lines) const {
    Sha256 h;
    h.Update(std::to_string(lines.size()));
    for (const auto& l : lines) {
      h.Update("\n");
      h.Update(l);
    }
    const std::string fp = h.HexDigest();
    return root_ / fp.substr(0, 2) / (fp + ".json");
  }

  fs::path root_;
};

std::vector<std::string> RunExternal(const BackendSpec& spec,
                                     std::span<const std::string> lines) {
  if (const auto* c = std::get_if<CommandConfig>(&spec.config)) {
    return RunCommand(*c, spec.direction, lines);
  }
  return RunHttp(std::get<HttpConfig>(spec.config), lines);
}

}  // namespace

std::vector<std::string> TranslateBatch(const BackendSpec& spec,
                                        std::span<const std::string> lines,
                                        const TranslateOptions& options) {
  spec.Validate();
  std::vector<std::string> out(lines.size());
  switch (spec.kind) {
    case BackendKind::kIdentity:
      std::copy(lines.begin(), lines.end(), out.begin());
      return out;
    case BackendKind::kToyChannel:
    case BackendKind::kToyDenoiser: {
      const ChannelConfig& cfg = spec.channel();
      const bool channel = spec.kind == BackendKind::kToyChannel;
      if (!options.salts.empty() && options.salts.size() != lines.size()) {
        throw DataError("per-line salts do not match the number of lines");
      }
      auto salt = [&](std::size_t i) {
        return options.salts.empty() ? options.salt_base + i : options.salts[i];
      };
      ParallelChunks(lines.size(), spec.batch_size, options.jobs,
                     [&](std::size_t b, std::size_t e) {
                       for (std::size_t i = b; i < e; ++i) {
                         out[i] = channel ? ChannelApply(cfg, lines[i], salt(i))
                                          : ToyDenoise(cfg, lines[i]);
                       }
                     });
      return out;
    }
    case BackendKind::kCommand:
    case BackendKind::kHttp:
      break;
  }

  std::optional<OutputCache> cache;
  if (options.cache_dir) cache.emplace(*options.cache_dir, spec);
  ParallelChunks(lines.size(), spec.batch_size, options.jobs,
                 [&](std::size_t b, std::size_t e) {
                   const auto batch = lines.subspan(b, e - b);
                   std::optional<std::vector<std::string>> result;
                   if (cache) result = cache->Get(batch);
                   std::string last_error;
                   for (int attempt = 0; !result && attempt <= spec.retries; ++attempt) {
                     try {
                       result = RunExternal(spec, batch);
                     } catch (const std::exception& ex) {
                       last_error = ex.what();
                     }
                     if (result && cache) cache->Put(batch, *result);
                   }
                   if (!result) {
                     throw BackendError(fmt::format("{} backend failed after {} attempt(s): {}",
                                                    ToString(spec.kind), spec.retries + 1,
                                                    last_error),
                                        b, e);
                   }
                   std::move(result->begin(), result->end(), out.begin() + static_cast<std::ptrdiff_t>(b));
                 });
  return out;
}

}  // namespace rttape
