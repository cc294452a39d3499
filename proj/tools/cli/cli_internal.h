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

#ifndef RTTAPE_TOOLS_CLI_CLI_INTERNAL_H_
#define RTTAPE_TOOLS_CLI_CLI_INTERNAL_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "rttape/io.h"

namespace rttape::cli {

struct Globals {
  unsigned jobs = 1;
  std::uint64_t seed = 0;
};

// Per-invocation state handed to a subcommand.
struct Context {
  std::ostream& out;
  std::ostream& err;
  const Globals& globals;
  std::string out_path;
  std::vector<std::filesystem::path> inputs;
  // Extra fields recorded in the run manifest.
  nlohmann::json manifest_extra = nlohmann::json::object();

  void Input(const std::filesystem::path& p) { inputs.push_back(p); }
};

// Line or whole-text output to a file (--out) or the fallback stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback);
  void Line(std::string_view line);
  void Text(std::string_view text);
  void Close();

 private:
  std::unique_ptr<LineWriter> file_;
  std::ostream* stream_ = nullptr;
};

struct Command {
  CLI::App* app = nullptr;
  std::string* out_path = nullptr;
  std::function<void(Context&)> run;
};

void RegisterCommands(CLI::App& app, std::vector<Command>& commands);

// Thrown for flag combinations CLI11 cannot express; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rttape::cli

#endif  // RTTAPE_TOOLS_CLI_CLI_INTERNAL_H_
