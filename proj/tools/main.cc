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

// eventqa: corpus conversion, translation alignment, regime runs and reports.
//
//   eventqa convert    --config c.json
//   eventqa align      --config c.json
//   eventqa run        --config c.json [--regime few_shot --budget 64]
//   eventqa report     [run_dir ...]
//   eventqa perplexity --config c.json
//   eventqa iaa        --config c.json

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.h"
#include "config.h"

namespace {

using eventqa::cli::PipelineConfig;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  std::string regime;
  std::string backend;
  long long budget = -1;
  long long seed = -1;
};

void AddCommon(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "JSON pipeline config");
  cmd->add_option("-s,--set", args.overrides, "override, e.g. regime.budget=64")
      ->take_all();
  cmd->add_option("-o,--output", args.output, "output path (paths.output)");
}

PipelineConfig BuildConfig(const CommonArgs& args) {
  nlohmann::json doc = nlohmann::json::object();
  if (!args.config_path.empty()) doc = eventqa::cli::LoadConfigDocument(args.config_path);
  if (!args.output.empty()) doc["paths"]["output"] = args.output;
  if (!args.regime.empty()) doc["regime"]["kind"] = args.regime;
  if (!args.backend.empty()) doc["backends"]["qa"] = args.backend;
  if (args.budget >= 0) doc["regime"]["budget"] = args.budget;
  if (args.seed >= 0) doc["train"]["seed"] = args.seed;
  for (const auto& o : args.overrides) eventqa::cli::ApplyOverride(doc, o);
  return eventqa::cli::ParseConfig(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-attribute extraction as extractive question answering"};
  app.require_subcommand(1);

  CommonArgs args;
  std::vector<std::string> run_dirs;

  auto* convert = app.add_subcommand("convert", "annotated ads -> SQuAD-v2 records");
  auto* align = app.add_subcommand("align", "translate records and project answers");
  auto* run = app.add_subcommand("run", "train and evaluate one regime");
  auto* report = app.add_subcommand("report", "F1 grid over run directories");
  auto* perplexity = app.add_subcommand("perplexity", "pseudo-perplexity comparison");
  auto* iaa = app.add_subcommand("iaa", "inter-annotator agreement");
  for (auto* cmd : {convert, align, run, report, perplexity, iaa}) AddCommon(cmd, args);
  run->add_option("--regime", args.regime, "regime kind");
  run->add_option("--budget", args.budget, "training budget in ads");
  run->add_option("--backend", args.backend, "QA backend name");
  run->add_option("--seed", args.seed, "training seed");
  report->add_option("run_dirs", run_dirs, "run directories (default: all under paths.run_dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : eventqa::cli::kExitBadInput;
  }

  eventqa::cli::CommandIo io{std::cout, std::cerr};
  return eventqa::cli::GuardedRun(
      [&] {
        const PipelineConfig config = BuildConfig(args);
        if (convert->parsed()) {
          eventqa::cli::CmdConvert(config, io);
        } else if (align->parsed()) {
          eventqa::cli::CmdAlign(config, io);
        } else if (run->parsed()) {
          eventqa::cli::CmdRun(config, io);
        } else if (report->parsed()) {
          std::vector<std::filesystem::path> dirs(run_dirs.begin(), run_dirs.end());
          eventqa::cli::CmdReport(config, dirs, io);
        } else if (perplexity->parsed()) {
          eventqa::cli::CmdPerplexity(config, io);
        } else if (iaa->parsed()) {
          eventqa::cli::CmdIaa(config, io);
        }
      },
      std::cerr);
}
