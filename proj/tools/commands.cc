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

#include "commands.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "eventqa/alignment.h"
#include "eventqa/backends.h"
#include "eventqa/conversion.h"
#include "eventqa/corpus.h"
#include "eventqa/errors.h"
#include "eventqa/metrics.h"
#include "eventqa/perplexity.h"
#include "eventqa/regimes.h"
#include "eventqa/run_store.h"
#include "eventqa/squad_io.h"
#include "eventqa/translator.h"

namespace eventqa::cli {
namespace {

namespace fs = std::filesystem;

const std::string& Require(const std::string& value, const char* key) {
  if (value.empty()) throw ValidationError(std::string("missing required path '") + key + "'");
  return value;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

AttributeQuestionMap LoadQuestions(const std::string& path, Language lang) {
  if (path == "builtin:runaways") {
    if (lang != Language::kEnglish) {
      throw ValidationError("builtin:runaways is an English question map");
    }
    return RunawaysQuestionMap();
  }
  return LoadQuestionMapFile(path, lang);
}

void ReportDiscards(const std::vector<Discard>& discards, std::ostream& err) {
  for (const auto& d : discards) {
    err << "discard\t" << d.ad_id << '\t' << d.attribute << '\t' << d.reason << '\n';
  }
}

std::vector<QARecord> LoadRecords(const std::string& path, const char* key) {
  auto records = LoadSquadFile(Require(path, key));
  if (records.empty()) throw ValidationError(std::string(key) + ": dataset is empty");
  return records;
}

std::vector<std::string> LoadLines(const std::string& path) {
  std::vector<std::string> lines;
  std::istringstream in(ReadText(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
  }
  if (lines.empty()) throw ValidationError(path + ": unlabeled corpus is empty");
  return lines;
}

std::shared_ptr<Translator> MakeTranslator(const PipelineConfig& config) {
  const std::string& name = config.backends.translator;
  const fs::path cache_file = EffectiveCacheDir(config) / "translations.tsv";
  std::shared_ptr<Translator> inner;
  if (name == "identity") {
    return std::make_shared<IdentityTranslator>();
  } else if (name == "cache") {
    inner = nullptr;
  } else if (name.rfind("command:", 0) == 0) {
    inner = std::make_shared<CommandTranslator>(name.substr(8));
  } else {
    throw ValidationError("unknown translator '" + name +
                          "' (expected identity, cache or command:<program>)");
  }
  fs::create_directories(cache_file.parent_path());
  return std::make_shared<CachingTranslator>(cache_file, inner);
}

}  // namespace

void CmdConvert(const PipelineConfig& config, CommandIo io) {
  const auto& corpus_path = Require(config.paths.corpus, "paths.corpus");
  const auto& qmap_path = Require(config.paths.question_map, "paths.question_map");
  const auto& output = Require(config.paths.output, "paths.output");
  const AttributeQuestionMap qmap = LoadQuestions(qmap_path, config.flags.corpus_language);

  LoadedCorpus corpus = LoadAdsFile(corpus_path);
  ConversionOptions opts;
  opts.emit_negatives = config.flags.emit_negatives;
  opts.drop_unknown_attributes = config.flags.drop_unknown_attributes;
  ConversionResult result = ConvertCorpus(corpus.ads, qmap, opts);

  std::vector<Discard> discards = corpus.discards;
  discards.insert(discards.end(), result.discards.begin(), result.discards.end());
  ReportDiscards(discards, io.err);
  SaveSquadFile(result.records, output);

  const CorpusStats stats = ComputeCorpusStats(corpus.ads);
  nlohmann::ordered_json summary = nlohmann::ordered_json::parse(result.report.ToJson());
  summary["n_annotations_loaded"] = stats.n_annotations;
  summary["discarded_on_load"] = corpus.discards.size();
  summary["records"] = result.records.size();
  summary["output"] = output;

  if (config.split.enabled) {
    const AdPartition part =
        PartitionAds(corpus.ads, config.split.train_fraction, config.split.seed);
    std::set<std::string> train_ids;
    for (const auto& ad : part.train) train_ids.insert(ad.id);
    std::vector<QARecord> train, validation;
    for (const auto& r : result.records) {
      (train_ids.count(r.source_ad_id) ? train : validation).push_back(r);
    }
    const fs::path out(output);
    const fs::path stem = out.parent_path() / out.stem();
    const std::string train_path =
        config.paths.train.empty() ? stem.string() + ".train.json" : config.paths.train;
    const std::string eval_path =
        config.paths.eval.empty() ? stem.string() + ".validation.json" : config.paths.eval;
    SaveSquadFile(train, train_path);
    SaveSquadFile(validation, eval_path);
    summary["split"] = {{"seed", config.split.seed},
                        {"train_fraction", config.split.train_fraction},
                        {"train_ads", part.train.size()},
                        {"validation_ads", part.validation.size()},
                        {"train_records", train.size()},
                        {"validation_records", validation.size()},
                        {"train_path", train_path},
                        {"validation_path", eval_path}};
  }
  const std::string text = summary.dump(2) + "\n";
  if (!config.paths.report_file.empty()) WriteText(config.paths.report_file, text);
  io.out << text;
}

void CmdAlign(const PipelineConfig& config, CommandIo io) {
  const auto records = LoadRecords(config.paths.input, "paths.input");
  const auto& output = Require(config.paths.output, "paths.output");
  const auto target_map =
      LoadQuestions(Require(config.paths.target_question_map, "paths.target_question_map"),
                    config.regime.target_lang);
  auto translator = MakeTranslator(config);

  AlignOptions opts;
  opts.source_lang = config.regime.source_lang;
  opts.target_lang = config.regime.target_lang;
  opts.threshold = config.flags.alignment_threshold;
  AlignmentReport report;
  const auto aligned = AlignRecords(records, target_map, *translator, opts, report);
  SaveSquadFile(aligned, output);

  nlohmann::ordered_json summary = nlohmann::ordered_json::parse(report.ToJson());
  if (auto* caching = dynamic_cast<CachingTranslator*>(translator.get())) {
    summary["cache_hits"] = caching->hits();
    summary["cache_misses"] = caching->misses();
  }
  summary["output"] = output;
  const std::string text = summary.dump(2) + "\n";
  if (!config.paths.report_file.empty()) WriteText(config.paths.report_file, text);
  io.out << text;
}

fs::path CmdRun(const PipelineConfig& config, CommandIo io) {
  RegimeSpec spec = config.regime;
  const RegimeKind kind = spec.kind;
  if (kind == RegimeKind::kFurtherPretrain || kind == RegimeKind::kJointMlmQa ||
      kind == RegimeKind::kCrossLingualMlm) {
    if (!spec.unlabeled_corpus_ref && !config.paths.unlabeled_text.empty()) {
      spec.unlabeled_corpus_ref = config.paths.unlabeled_text;
    }
  } else if (kind == RegimeKind::kTriTraining) {
    if (!spec.unlabeled_corpus_ref && !config.paths.unlabeled.empty()) {
      spec.unlabeled_corpus_ref = config.paths.unlabeled;
    }
  }
  spec.Validate();

  const auto eval = LoadRecords(config.paths.eval, "paths.eval");
  std::vector<QARecord> train;
  if (IsTraining(kind)) {
    train = LoadRecords(config.paths.train, "paths.train");
    spec.Validate(CountAds(train));
    if (spec.budget) train = SampleBudget(train, *spec.budget, config.train.seed);
  }

  RunOptions opts;
  opts.spec = spec;
  opts.eval.language = spec.target_lang;
  opts.eval.bucket_edges = config.flags.bucket_edges;
  opts.null_threshold = config.flags.null_threshold;

  BackendContext ctx{&eval};
  ModelFactory factory = [&]() { return MakeTrainableQaModel(config.backends.qa, ctx); };

  RegimeRunResult result;
  std::map<std::string, std::string> extra;
  switch (kind) {
    case RegimeKind::kZeroShot:
      result = RunZeroShot(*MakeQaModel(config.backends.qa, ctx), eval, opts);
      break;
    case RegimeKind::kFewShot:
      result = RunFewShot(*factory(), train, eval, config.train, opts);
      break;
    case RegimeKind::kFurtherPretrain:
      result = RunFurtherPretrain(*factory(), LoadLines(*spec.unlabeled_corpus_ref), train,
                                  eval, config.train, opts);
      break;
    case RegimeKind::kJointMlmQa:
      result = RunJointMlmQa(*factory(), LoadLines(*spec.unlabeled_corpus_ref), train, eval,
                             config.train, opts);
      break;
    case RegimeKind::kTriTraining: {
      LoadedCorpus ads = LoadAdsFile(*spec.unlabeled_corpus_ref);
      const auto qmap = LoadQuestions(Require(config.paths.question_map, "paths.question_map"),
                                      spec.source_lang);
      const auto unlabeled = MakeUnlabeledExamples(ads.ads, qmap);
      TriTrainingOptions tri;
      tri.rounds = spec.rounds.value_or(1);
      tri.adopt_no_answer = config.flags.adopt_no_answer;
      result = RunTriTraining(factory, train, unlabeled, eval, config.train, tri, opts);
      break;
    }
    case RegimeKind::kCrossLingualSimple:
      result = RunCrossLingual(*factory(), train, eval, CrossLingualMode::kSimple, {},
                               config.train, opts);
      break;
    case RegimeKind::kCrossLingualMlm:
      result = RunCrossLingual(*factory(), train, eval, CrossLingualMode::kMlm,
                               LoadLines(*spec.unlabeled_corpus_ref), config.train, opts);
      break;
    case RegimeKind::kAttributeHoldout: {
      std::vector<std::string> attributes;
      if (*spec.attribute == "*") {
        std::set<std::string> seen;
        for (const auto& r : eval) {
          if (seen.insert(r.attribute).second) attributes.push_back(r.attribute);
        }
      } else {
        attributes.push_back(*spec.attribute);
      }
      std::vector<HoldoutResult> holdouts;
      for (const auto& attribute : attributes) {
        holdouts.push_back(
            RunAttributeHoldout(factory, train, eval, attribute, config.train, opts));
      }
      result.spec = spec;
      result.phases = {"holdout"};
      result.provenance["spec"] = spec.ToJson();
      result.provenance["spec_hash"] = spec.Hash();
      result.provenance["datasets"]["train"] = DatasetHash(train);
      result.provenance["datasets"]["eval"] = DatasetHash(eval);
      double f1_sum = 0.0, em_sum = 0.0;
      for (const auto& h : holdouts) {
        result.metrics.per_attribute[h.attribute] = h.heldout;
        result.metrics.n += h.heldout.n;
        f1_sum += h.heldout.f1 * static_cast<double>(h.heldout.n);
        em_sum += h.heldout.exact_match * static_cast<double>(h.heldout.n);
        result.provenance["holdouts"][h.attribute] = {
            {"trained_fingerprint", h.trained_fingerprint},
            {"heldout_fingerprint", h.heldout_fingerprint},
            {"removed_records", h.removed_records}};
        result.log.push_back("holdout " + h.attribute + ": removed " +
                             std::to_string(h.removed_records) + " training records");
      }
      if (result.metrics.n > 0) {
        result.metrics.f1 = f1_sum / static_cast<double>(result.metrics.n);
        result.metrics.exact_match = em_sum / static_cast<double>(result.metrics.n);
      }
      if (!holdouts.empty()) result.model_fingerprint = holdouts.front().heldout_fingerprint;
      extra["holdout.tsv"] = HoldoutTsv(holdouts);
      break;
    }
    case RegimeKind::kPromptBaseline:
      result = RunPromptBaseline(*MakePromptModel(config.backends.prompt, ctx), eval, opts);
      break;
  }
  const fs::path dir = WriteRunDirectory(config.paths.run_dir, result, UtcTimestamp(), extra);
  char line[160];
  std::snprintf(line, sizeof line, "%s\t%s\tf1=%.2f\tem=%.2f\tn=%zu\n",
                RegimeKindName(kind).c_str(), LanguageCode(spec.target_lang).data(),
                result.metrics.f1, result.metrics.exact_match, result.metrics.n);
  io.out << line << "run_dir\t" << dir.string() << '\n';
  return dir;
}

void CmdReport(const PipelineConfig& config, const std::vector<fs::path>& run_dirs,
               CommandIo io) {
  std::vector<fs::path> dirs = run_dirs;
  if (dirs.empty()) {
    const fs::path root = config.paths.run_dir;
    if (!fs::is_directory(root)) throw ValidationError("no run directory " + root.string());
    for (const auto& entry : fs::directory_iterator(root)) {
      if (entry.is_directory() && fs::exists(entry.path() / "metrics.json")) {
        dirs.push_back(entry.path());
      }
    }
    // Timestamped names sort chronologically, so later runs win a cell.
    std::sort(dirs.begin(), dirs.end());
  }
  if (dirs.empty()) throw ValidationError("no runs to report");
  std::vector<StoredRun> runs;
  for (const auto& d : dirs) runs.push_back(ReadRunDirectory(d));
  const std::string grid = ReportGrid(runs);
  if (!config.paths.output.empty()) WriteText(config.paths.output, grid);
  io.out << grid;
}

void CmdPerplexity(const PipelineConfig& config, CommandIo io) {
  const auto corpus =
      TokenizeCorpus(ReadText(Require(config.paths.perplexity_corpus, "paths.perplexity_corpus")));
  if (corpus.empty()) throw ValidationError("perplexity corpus is empty");
  if (config.backends.scorers.empty()) throw ValidationError("backends.scorers is empty");
  std::vector<NamedScorer> scorers;
  for (const auto& name : config.backends.scorers) scorers.emplace_back(name, MakeScorer(name));
  const std::string table =
      PerplexityTableTsv(CompareModels(corpus, scorers, config.flags.mask_granularity));
  if (!config.paths.output.empty()) WriteText(config.paths.output, table);
  io.out << table;
}

void CmdIaa(const PipelineConfig& config, CommandIo io) {
  const auto a = LoadAdsFile(Require(config.paths.annotator_a, "paths.annotator_a"));
  const auto b = LoadAdsFile(Require(config.paths.annotator_b, "paths.annotator_b"));
  ReportDiscards(a.discards, io.err);
  ReportDiscards(b.discards, io.err);
  const double iaa = PairwiseIaa(a.ads, b.ads);
  nlohmann::ordered_json j;
  j["iaa_f1"] = iaa;
  j["n_ads"] = a.ads.size();
  const std::string text = j.dump(2) + "\n";
  if (!config.paths.output.empty()) WriteText(config.paths.output, text);
  io.out << text;
}

int GuardedRun(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const TransportError& e) {
    err << "translator error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const BackendError& e) {
    err << "backend error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace eventqa::cli
