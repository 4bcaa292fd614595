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

#ifndef EVENTQA_RUN_STORE_H_
#define EVENTQA_RUN_STORE_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eventqa/metrics.h"
#include "eventqa/regimes.h"

// Persistence of regime runs:
//   <root>/<timestamp>-<spec-hash>/
//     config.json              provenance (spec, config, seeds, dataset hashes)
//     metrics.json             MetricsReport; byte-identical across replays
//     per_attribute.tsv
//     adopted_pseudolabels.tsv header only unless tri-training adopted labels
//     log.txt                  human-readable log including timings
namespace eventqa {

std::string AdoptedPseudolabelsTsv(const std::vector<PseudoLabel>& labels);

// UTC, "YYYYMMDDTHHMMSSZ".
std::string UtcTimestamp();

// Writes a run directory and returns its path. If the directory exists a
// numeric suffix is appended. `extra_files` are written alongside.
std::filesystem::path WriteRunDirectory(
    const std::filesystem::path& root, const RegimeRunResult& result,
    const std::string& timestamp,
    const std::map<std::string, std::string>& extra_files = {});

struct StoredRun {
  std::filesystem::path dir;
  RegimeSpec spec;
  MetricsReport metrics;
  nlohmann::json provenance;
};

// Throws FormatError when config.json or metrics.json is missing or invalid.
StoredRun ReadRunDirectory(const std::filesystem::path& dir);

// Grid of F1 scores: one row per (regime, target language), one column per
// budget (ascending; "all" for runs without a budget). Missing cells are
// "-". Later runs overwrite earlier ones in the same cell.
std::string ReportGrid(const std::vector<StoredRun>& runs);

}  // namespace eventqa

#endif  // EVENTQA_RUN_STORE_H_
