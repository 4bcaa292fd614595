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

#ifndef EVENTQA_TOOLS_CONFIG_H_
#define EVENTQA_TOOLS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eventqa/model.h"
#include "eventqa/perplexity.h"
#include "eventqa/regimes.h"

namespace eventqa::cli {

// Everything a subcommand needs, parsed from one JSON config file plus
// command line overrides. Unknown keys are rejected.
struct PipelineConfig {
  struct Paths {
    std::string corpus;
    std::string question_map;         // TSV file or "builtin:runaways"
    std::string target_question_map;
    std::string train;
    std::string eval;
    std::string unlabeled;            // ads (JSONL) without usable annotations
    std::string unlabeled_text;       // one sentence / ad per line
    std::string input;
    std::string output;
    std::string cache_dir = ".eventqa_cache";
    std::string run_dir = "runs";
    std::string perplexity_corpus;
    std::string annotator_a;
    std::string annotator_b;
    std::string report_file;
  } paths;

  RegimeSpec regime;
  TrainConfig train;

  struct Split {
    bool enabled = false;
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
  } split;

  struct Backends {
    std::string qa = "mock.first_token";
    std::string prompt = "mock.prompt_none";
    std::string translator = "identity";
    std::vector<std::string> scorers;
  } backends;

  struct Flags {
    bool emit_negatives = true;
    bool drop_unknown_attributes = false;
    double null_threshold = kDefaultNullThreshold;
    double alignment_threshold = 0.5;
    MaskGranularity mask_granularity = MaskGranularity::kSubToken;
    bool adopt_no_answer = true;
    Language corpus_language = Language::kEnglish;
    std::optional<std::vector<std::size_t>> bucket_edges;
  } flags;
};

// Throws ValidationError on unknown keys or values of the wrong type.
PipelineConfig ParseConfig(const nlohmann::json& doc);

// Applies "section.key=value" to a raw config document. The value is parsed
// as JSON when possible and taken as a string otherwise.
void ApplyOverride(nlohmann::json& doc, const std::string& assignment);

nlohmann::json LoadConfigDocument(const std::filesystem::path& path);

// Cache directory, honoring the EVENTQA_CACHE_DIR environment variable.
std::filesystem::path EffectiveCacheDir(const PipelineConfig& config);

}  // namespace eventqa::cli

#endif  // EVENTQA_TOOLS_CONFIG_H_
