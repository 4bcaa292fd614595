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

#include "eventqa/run_store.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "eventqa/errors.h"

namespace eventqa {
namespace {

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string FormatF1(double f1) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", f1);
  return buf;
}

}  // namespace

std::string AdoptedPseudolabelsTsv(const std::vector<PseudoLabel>& labels) {
  std::string out = "round\trecord_id\tanswer\tchar_start\tvotes\n";
  for (const auto& l : labels) {
    out += std::to_string(l.round) + "\t" + l.record_id + "\t" + l.answer + "\t" +
           std::to_string(l.char_start) + "\t" + std::to_string(l.votes) + "\n";
  }
  return out;
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

std::filesystem::path WriteRunDirectory(
    const std::filesystem::path& root, const RegimeRunResult& result,
    const std::string& timestamp,
    const std::map<std::string, std::string>& extra_files) {
  const std::string base = timestamp + "-" + result.spec.Hash();
  std::filesystem::create_directories(root);
  std::filesystem::path dir = root / base;
  for (int i = 1; std::filesystem::exists(dir); ++i) {
    dir = root / (base + "-" + std::to_string(i));
  }
  std::filesystem::create_directories(dir);

  WriteText(dir / "config.json", result.provenance.dump(2) + "\n");
  WriteText(dir / "metrics.json", MetricsToJson(result.metrics));
  WriteText(dir / "per_attribute.tsv", PerAttributeTsv(result.metrics));
  WriteText(dir / "adopted_pseudolabels.tsv", AdoptedPseudolabelsTsv(result.adopted));

  std::ostringstream log;
  log << "regime: " << RegimeKindName(result.spec.kind) << "\n";
  log << "model: " << result.model_fingerprint << "\n";
  for (const auto& line : result.log) log << line << "\n";
  for (const auto& [phase, ms] : result.timing_ms) {
    log << "timing " << phase << ": " << ms << " ms\n";
  }
  WriteText(dir / "log.txt", log.str());
  for (const auto& [name, text] : extra_files) WriteText(dir / name, text);
  return dir;
}

StoredRun ReadRunDirectory(const std::filesystem::path& dir) {
  StoredRun run;
  run.dir = dir;
  try {
    run.provenance = nlohmann::json::parse(ReadText(dir / "config.json"));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError((dir / "config.json").string() + ": " + e.what());
  }
  if (!run.provenance.contains("spec")) {
    throw FormatError((dir / "config.json").string() + ": missing spec");
  }
  run.spec = RegimeSpec::FromJson(run.provenance["spec"]);
  run.metrics = MetricsFromJson(ReadText(dir / "metrics.json"));
  return run;
}

std::string ReportGrid(const std::vector<StoredRun>& runs) {
  using Row = std::pair<std::string, std::string>;  // regime, language
  std::set<std::optional<std::size_t>> budgets;
  std::map<Row, std::map<std::optional<std::size_t>, double>> cells;
  std::vector<Row> row_order;
  for (const auto& run : runs) {
    const Row row{RegimeKindName(run.spec.kind),
                  std::string(LanguageCode(run.spec.target_lang))};
    if (!cells.count(row)) row_order.push_back(row);
    budgets.insert(run.spec.budget);
    cells[row][run.spec.budget] = run.metrics.f1;
  }
  std::ostringstream out;
  out << "regime\tlang";
  // std::nullopt sorts first; print it as "all".
  for (const auto& b : budgets) out << '\t' << (b ? std::to_string(*b) : "all");
  out << '\n';
  for (const auto& row : row_order) {
    out << row.first << '\t' << row.second;
    const auto& r = cells[row];
    for (const auto& b : budgets) {
      auto it = r.find(b);
      out << '\t' << (it == r.end() ? std::string("-") : FormatF1(it->second));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace eventqa
