// Copyright 2026 The EventQA Authors.
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

#ifndef EVENTQA_TOOLS_COMMANDS_H_
#define EVENTQA_TOOLS_COMMANDS_H_

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "config.h"

namespace eventqa::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadInput = 2;  // validation, format, integrity
inline constexpr int kExitBackend = 3;   // translator or model backend

struct CommandIo {
  std::ostream& out;
  std::ostream& err;
};

// Each command reads its inputs from the config, writes artifacts to the
// configured paths and a short summary to `io.out`. Errors are thrown.
void CmdConvert(const PipelineConfig& config, CommandIo io);
void CmdAlign(const PipelineConfig& config, CommandIo io);
// Returns the run directory.
std::filesystem::path CmdRun(const PipelineConfig& config, CommandIo io);
void CmdReport(const PipelineConfig& config,
               const std::vector<std::filesystem::path>& run_dirs, CommandIo io);
void CmdPerplexity(const PipelineConfig& config, CommandIo io);
void CmdIaa(const PipelineConfig& config, CommandIo io);

// Runs `body`, reporting any exception on `err` and mapping it to an exit
// code.
int GuardedRun(const std::function<void()>& body, std::ostream& err);

}  // namespace eventqa::cli

#endif  // EVENTQA_TOOLS_COMMANDS_H_
