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

#include "cli/cli.h"

#include <algorithm>
#include <chrono>
#include <ctime>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cli/cli_internal.h"
#include "rttape/errors.h"
#include "rttape/fingerprint.h"
#include "rttape/io.h"
#include "rttape/unicode.h"

namespace rttape::cli {

namespace fs = std::filesystem;

Output::Output(const std::string& path, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    stream_ = &fallback;
  } else {
    file_ = std::make_unique<LineWriter>(path);
  }
}

void Output::Line(std::string_view line) {
  if (file_) {
    file_->Write(line);
  } else {
    *stream_ << line << '\n';
  }
}

void Output::Text(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  Line(text);
}

void Output::Close() {
  if (file_) file_->Close();
  if (stream_ != nullptr) stream_->flush();
}

namespace {

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json MaterializedOptions(const CLI::App& app) {
  nlohmann::json j = nlohmann::json::object();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config" || name == "manifest" || name == "version") {
      continue;
    }
    std::vector<std::string> values = opt->results();
    if (values.empty()) {
      if (opt->get_type_size() == 0) {
        j[name] = false;
        continue;
      }
      values.push_back(opt->get_default_str());
    }
    if (opt->get_type_size() == 0) {
      j[name] = true;
    } else if (values.size() == 1 && opt->get_expected_max() <= 1) {
      j[name] = values.front();
    } else {
      j[name] = values;
    }
  }
  return j;
}

void WriteManifest(const fs::path& path, const CLI::App& root, const CLI::App& sub,
                   const Context& ctx, const std::string& started) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& p : ctx.inputs) {
    std::error_code ec;
    if (fs::is_regular_file(p, ec)) {
      inputs.push_back({{"path", p.string()}, {"sha256", FileSha256Hex(p)}});
    }
  }
  nlohmann::json config = MaterializedOptions(root);
  config.update(MaterializedOptions(sub));
  nlohmann::json m = {{"tool", "rttape"},
                      {"version", RTTAPE_VERSION},
                      {"subcommand", sub.get_name()},
                      {"config", config},
                      {"seed", ctx.globals.seed},
                      {"jobs", ctx.globals.jobs},
                      {"inputs", inputs},
                      {"unicode_version", std::string(unicode::TableVersion())},
                      {"started_at", started},
                      {"finished_at", UtcNow()}};
  if (!ctx.manifest_extra.empty()) m["details"] = ctx.manifest_extra;
  WriteFileAtomic(path, m.dump(2) + "\n");
}

}  // namespace

int Run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rttape: round-trip translation, post-editing and origin-split BLEU tools",
               "rttape"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI config file; flags override it");
  Globals globals;
  std::string manifest_path;
  app.add_option("--jobs,-j", globals.jobs, "Worker threads; output is identical for any value")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--seed", globals.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--manifest", manifest_path, "Also write the run manifest to this path");
  app.set_version_flag("--version", std::string(RTTAPE_VERSION));

  std::vector<Command> commands;
  RegisterCommands(app, commands);

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << RTTAPE_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "rttape: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsageError;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const Command* cmd = nullptr;
  for (const auto& c : commands) {
    if (c.app == sub) cmd = &c;
  }
  Context ctx{out, err, globals, cmd->out_path ? *cmd->out_path : std::string(), {}, {}};
  const std::string started = UtcNow();
  try {
    cmd->run(ctx);
    if (!ctx.out_path.empty() && ctx.out_path != "-") {
      WriteManifest(ctx.out_path + ".manifest.json", app, *sub, ctx, started);
    }
    if (!manifest_path.empty()) WriteManifest(manifest_path, app, *sub, ctx, started);
  } catch (const UsageError& e) {
    err << "rttape " << sub->get_name() << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const BackendError& e) {
    err << "rttape " << sub->get_name() << ": backend error: " << e.what() << "\n";
    return kBackendError;
  } catch (const std::exception& e) {
    err << "rttape " << sub->get_name() << ": " << e.what() << "\n";
    return kDataError;
  }
  return kOk;
}

}  // namespace rttape::cli
