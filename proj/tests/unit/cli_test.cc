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

#include <doctest.h>

#include <sstream>

#include "commands.h"
#include "config.h"
#include "eventqa/corpus.h"
#include "eventqa/errors.h"
#include "eventqa/squad_io.h"
#include "test_util.h"

namespace eventqa::cli {
namespace {

using nlohmann::json;

struct Captured {
  std::ostringstream out, err;
  CommandIo io() { return {out, err}; }
};

int Run(const std::function<void(CommandIo)>& fn, Captured& c) {
  return GuardedRun([&] { fn(c.io()); }, c.err);
}

const char* kAds =
    R"({"id": "a1", "text": "Tom ran away, aged 20. Ten dollars reward.", "language": "en", "annotations": [{"attribute": "name", "span_text": "Tom"}, {"attribute": "age", "span_text": "20"}, {"attribute": "reward", "span_text": "Ten dollars"}]}
{"id": "a2", "text": "Sarah absconded. Five pounds reward.", "language": "en", "annotations": [{"attribute": "name", "span_text": "Sarah"}, {"attribute": "reward", "span_text": "Five pounds"}]}
{"id": "a3", "text": "Jim, aged 30, ran.", "language": "en", "annotations": [{"attribute": "name", "span_text": "Jim"}, {"attribute": "age", "span_text": "30"}]}
{"id": "a4", "text": "Bob fled with Ned. Reward offered.", "language": "en", "annotations": [{"attribute": "name", "span_text": "Bob"}, {"attribute": "name", "span_text": "Ned"}]}
)";

const char* kQuestions = "name\tWhat is the name?\nage\tHow old?\nreward\tHow much reward?\n";

struct Workspace {
  testing::TempDir dir{"eventqa-cli"};
  Workspace() {
    testing::WriteFile(dir / "ads.jsonl", kAds);
    testing::WriteFile(dir / "q.tsv", kQuestions);
  }
  json Config() const {
    json c;
    c["paths"]["corpus"] = (dir / "ads.jsonl").string();
    c["paths"]["question_map"] = (dir / "q.tsv").string();
    c["paths"]["output"] = (dir / "records.json").string();
    c["paths"]["run_dir"] = (dir / "runs").string();
    c["paths"]["cache_dir"] = (dir / "cache").string();
    return c;
  }
};

TEST_CASE("config parsing and overrides") {
  json doc = json::parse(R"({"regime": {"kind": "few_shot", "budget": 8},
                             "train": {"seed": 3}, "flags": {"mask_granularity": "word"}})");
  ApplyOverride(doc, "regime.budget=16");
  ApplyOverride(doc, "backends.qa=mock.memorize");
  ApplyOverride(doc, "regime.target_lang=fr");
  const auto c = ParseConfig(doc);
  CHECK(c.regime.kind == RegimeKind::kFewShot);
  CHECK(c.regime.budget == 16u);
  CHECK(c.regime.target_lang == Language::kFrench);
  CHECK(c.train.seed == 3u);
  CHECK(c.backends.qa == "mock.memorize");
  CHECK(c.flags.mask_granularity == MaskGranularity::kWord);
  CHECK_FALSE(c.split.enabled);
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(ParseConfig(json::parse(R"({"pathz": {}})")), ValidationError);
  CHECK_THROWS_AS(ParseConfig(json::parse(R"({"paths": {"corpuss": "x"}})")), ValidationError);
  CHECK_THROWS_AS(ParseConfig(json::parse(R"({"regime": {"budget": "many"}})")),
                  ValidationError);
  CHECK_THROWS_AS(ParseConfig(json::parse(R"({"train": {"batch_size": 30}})")),
                  ValidationError);
  CHECK_THROWS_AS(ParseConfig(json::parse(R"({"split": {"train_fraction": 1.5}})")),
                  ValidationError);
  json doc;
  CHECK_THROWS_AS(ApplyOverride(doc, "nodot=1"), ValidationError);
}

TEST_CASE("exit codes") {
  std::ostringstream err;
  CHECK(GuardedRun([] {}, err) == kExitOk);
  CHECK(GuardedRun([] { throw ValidationError("v"); }, err) == kExitBadInput);
  CHECK(GuardedRun([] { throw FormatError("f"); }, err) == kExitBadInput);
  CHECK(GuardedRun([] { throw IntegrityError("i"); }, err) == kExitBadInput);
  CHECK(GuardedRun([] { throw TransportError("t"); }, err) == kExitBackend);
  CHECK(GuardedRun([] { throw BackendError("b"); }, err) == kExitBackend);
}

TEST_CASE("convert") {
  Workspace ws;
  Captured c;
  CHECK(Run([&](CommandIo io) { CmdConvert(ParseConfig(ws.Config()), io); }, c) == 0);
  const auto records = LoadSquadFile(ws.dir / "records.json");
  CHECK(records.size() == 12);
  const auto summary = json::parse(c.out.str());
  CHECK(summary["answerable_records"] == 8);
  CHECK(summary["answer_spans"] == 9);

  json missing = ws.Config();
  missing["paths"].erase("question_map");
  Captured c2;
  CHECK(Run([&](CommandIo io) { CmdConvert(ParseConfig(missing), io); }, c2) == kExitBadInput);
}

TEST_CASE("convert with split") {
  Workspace ws;
  json cfg = ws.Config();
  cfg["split"] = {{"train_fraction", 0.5}, {"seed", 1}};
  Captured c;
  CHECK(Run([&](CommandIo io) { CmdConvert(ParseConfig(cfg), io); }, c) == 0);
  const auto train = LoadSquadFile(ws.dir / "records.train.json");
  const auto validation = LoadSquadFile(ws.dir / "records.validation.json");
  CHECK(train.size() + validation.size() == 12);
  CHECK(CountAds(train) == 2);
}

TEST_CASE("align") {
  Workspace ws;
  Captured c;
  REQUIRE(Run([&](CommandIo io) { CmdConvert(ParseConfig(ws.Config()), io); }, c) == 0);
  testing::WriteFile(ws.dir / "q_fr.tsv",
                     "name\tQuel est le nom?\nage\tQuel âge?\nreward\tQuelle récompense?\n");
  json cfg = ws.Config();
  cfg["paths"]["input"] = (ws.dir / "records.json").string();
  cfg["paths"]["output"] = (ws.dir / "fr.json").string();
  cfg["paths"]["target_question_map"] = (ws.dir / "q_fr.tsv").string();
  cfg["regime"]["target_lang"] = "fr";
  Captured a;
  CHECK(Run([&](CommandIo io) { CmdAlign(ParseConfig(cfg), io); }, a) == 0);
  const auto report = json::parse(a.out.str());
  CHECK(report["discarded"] == 0);
  CHECK(LoadSquadFile(ws.dir / "fr.json").size() == 12);

  testing::WriteFile(ws.dir / "empty.json", R"({"version": "v2.0", "data": []})");
  cfg["paths"]["input"] = (ws.dir / "empty.json").string();
  Captured e;
  CHECK(Run([&](CommandIo io) { CmdAlign(ParseConfig(cfg), io); }, e) == kExitBadInput);

  cfg["paths"]["input"] = (ws.dir / "records.json").string();
  cfg["backends"]["translator"] = "cache";
  cfg["paths"]["cache_dir"] = (ws.dir / "empty-cache").string();
  Captured t;
  CHECK(Run([&](CommandIo io) { CmdAlign(ParseConfig(cfg), io); }, t) == kExitBackend);
}

TEST_CASE("run, rerun and report") {
  Workspace ws;
  json cfg = ws.Config();
  cfg["split"] = {{"train_fraction", 0.5}, {"seed", 1}};
  Captured c;
  REQUIRE(Run([&](CommandIo io) { CmdConvert(ParseConfig(cfg), io); }, c) == 0);

  json run = ws.Config();
  run["paths"]["train"] = (ws.dir / "records.train.json").string();
  run["paths"]["eval"] = (ws.dir / "records.train.json").string();
  run["regime"] = {{"kind", "few_shot"}, {"budget", 2}};
  run["backends"]["qa"] = "mock.memorize";
  run["train"]["seed"] = 7;
  std::filesystem::path first, second;
  Captured r1, r2;
  CHECK(Run([&](CommandIo io) { first = CmdRun(ParseConfig(run), io); }, r1) == 0);
  CHECK(Run([&](CommandIo io) { second = CmdRun(ParseConfig(run), io); }, r2) == 0);
  CHECK(first != second);
  const std::string metrics = testing::ReadFile(first / "metrics.json");
  CHECK(metrics == testing::ReadFile(second / "metrics.json"));
  CHECK(json::parse(metrics)["f1"] == 100.0);

  json zero = ws.Config();
  zero["paths"]["eval"] = (ws.dir / "records.validation.json").string();
  zero["backends"]["qa"] = "mock.oracle";
  Captured z;
  CHECK(Run([&](CommandIo io) { CmdRun(ParseConfig(zero), io); }, z) == 0);

  Captured rep;
  CHECK(Run([&](CommandIo io) { CmdReport(ParseConfig(ws.Config()), {}, io); }, rep) == 0);
  CHECK(rep.out.str() == "regime\tlang\tall\t2\nfew_shot\ten\t-\t100.00\nzero_shot\ten\t100.00\t-\n");
  Captured one;
  CHECK(Run([&](CommandIo io) { CmdReport(ParseConfig(ws.Config()), {first}, io); }, one) == 0);
  CHECK(one.out.str() == "regime\tlang\t2\nfew_shot\ten\t100.00\n");

  json bad = run;
  bad["regime"]["kind"] = "bogus";
  Captured b;
  CHECK(Run([&](CommandIo io) { CmdRun(ParseConfig(bad), io); }, b) == kExitBadInput);
  bad = run;
  bad["regime"]["budget"] = 50;
  Captured b2;
  CHECK(Run([&](CommandIo io) { CmdRun(ParseConfig(bad), io); }, b2) == kExitBadInput);
  bad = run;
  bad["backends"]["qa"] = "hf.unknown";
  Captured b3;
  CHECK(Run([&](CommandIo io) { CmdRun(ParseConfig(bad), io); }, b3) == kExitBadInput);
}

TEST_CASE("tri-training and holdout through the cli") {
  Workspace ws;
  json cfg = ws.Config();
  Captured c;
  REQUIRE(Run([&](CommandIo io) { CmdConvert(ParseConfig(cfg), io); }, c) == 0);
  json run = ws.Config();
  run["paths"]["train"] = (ws.dir / "records.json").string();
  run["paths"]["eval"] = (ws.dir / "records.json").string();
  run["paths"]["unlabeled"] = (ws.dir / "ads.jsonl").string();
  run["regime"] = {{"kind", "tri_training"}, {"budget", 4}, {"rounds", 2}};
  run["backends"]["qa"] = "mock.memorize";
  Captured t;
  std::filesystem::path dir;
  CHECK(Run([&](CommandIo io) { dir = CmdRun(ParseConfig(run), io); }, t) == 0);
  CHECK(std::filesystem::exists(dir / "adopted_pseudolabels.tsv"));

  run["regime"] = {{"kind", "attribute_holdout"}, {"attribute", "*"}};
  Captured h;
  CHECK(Run([&](CommandIo io) { dir = CmdRun(ParseConfig(run), io); }, h) == 0);
  const std::string tsv = testing::ReadFile(dir / "holdout.tsv");
  CHECK(tsv.find("reward\t100.0000\t50.0000") != std::string::npos);
}

TEST_CASE("perplexity") {
  Workspace ws;
  testing::WriteFile(ws.dir / "corpus.txt", "tom ran away\nfifty dollars reward\n");
  json cfg = ws.Config();
  cfg["paths"]["perplexity_corpus"] = (ws.dir / "corpus.txt").string();
  cfg["paths"].erase("output");
  cfg["backends"]["scorers"] = {"mock.uniform:17"};
  Captured c;
  CHECK(Run([&](CommandIo io) { CmdPerplexity(ParseConfig(cfg), io); }, c) == 0);
  CHECK(c.out.str().find("mock.uniform:17\t17.000000") != std::string::npos);

  cfg["backends"]["scorers"] = {"mock.uniform:30", "mock.uniform:5"};
  Captured two;
  CHECK(Run([&](CommandIo io) { CmdPerplexity(ParseConfig(cfg), io); }, two) == 0);
  const std::string out = two.out.str();
  CHECK(out.find("mock.uniform:5") < out.find("mock.uniform:30"));

  testing::WriteFile(ws.dir / "empty.txt", "\n\n");
  cfg["paths"]["perplexity_corpus"] = (ws.dir / "empty.txt").string();
  Captured e;
  CHECK(Run([&](CommandIo io) { CmdPerplexity(ParseConfig(cfg), io); }, e) == kExitBadInput);
}

TEST_CASE("inter-annotator agreement") {
  Workspace ws;
  json cfg = ws.Config();
  cfg["paths"]["annotator_a"] = (ws.dir / "ads.jsonl").string();
  cfg["paths"]["annotator_b"] = (ws.dir / "ads.jsonl").string();
  cfg["paths"].erase("output");
  Captured c;
  CHECK(Run([&](CommandIo io) { CmdIaa(ParseConfig(cfg), io); }, c) == 0);
  CHECK(json::parse(c.out.str())["iaa_f1"] == 100.0);
}

}  // namespace
}  // namespace eventqa::cli
