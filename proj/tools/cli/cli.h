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

#ifndef RTTAPE_TOOLS_CLI_CLI_H_
#define RTTAPE_TOOLS_CLI_CLI_H_

#include <ostream>
#include <span>
#include <string>

namespace rttape::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDataError = 2;
inline constexpr int kBackendError = 3;

// Entry point of the `rttape` tool. args[0] is the program name. Machine
// output goes to `out` unless --out is given; diagnostics go to `err`.
int Run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rttape::cli

#endif  // RTTAPE_TOOLS_CLI_CLI_H_
