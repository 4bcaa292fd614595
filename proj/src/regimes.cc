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

#include "eventqa/regimes.h"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "eventqa/errors.h"
#include "eventqa/hashing.h"
#include "eventqa/squad_io.h"

namespace eventqa {
namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

nlohmann::ordered_json ConfigJson(const TrainConfig& c) {
  return {{"epochs", c.epochs},
          {"learning_rate", c.learning_rate},
          {"batch_size", c.batch_size},
          {"joint_qa_batch_size", c.joint_qa_batch_size},
          {"joint_mlm_batch_size", c.joint_mlm_batch_size},
          {"weight_decay", c.weight_decay},
          {"max_sequence_length", c.max_sequence_length},
          {"seed", c.seed}};
}

std::string CorpusHash(const std::vector<std::string>& corpus) {
  Fingerprinter fp;
  for (const auto& s : corpus) fp.AddField(s);
  return fp.hex();
}

RegimeRunResult Begin(const RunOptions& opts) {
  RegimeRunResult r;
  r.spec = opts.spec;
  r.provenance["spec"] = opts.spec.ToJson();
  r.provenance["spec_hash"] = opts.spec.Hash();
  r.provenance["null_threshold"] = opts.null_threshold;
  r.provenance["eval_language"] = std::string(LanguageCode(opts.eval.language));
  return r;
}

void Finish(RegimeRunResult& r, const QAModel& model,
            const std::vector<QARecord>& eval, const RunOptions& opts) {
  const auto start = Clock::now();
  const auto preds = PredictAll(model, eval, opts.null_threshold);
  r.metrics = Evaluate(preds, eval, opts.eval);
  r.timing_ms["evaluate"] = MillisSince(start);
  r.model_fingerprint = model.Fingerprint();
  r.provenance["model_fingerprint"] = r.model_fingerprint;
  r.provenance["datasets"]["eval"] = DatasetHash(eval);
  r.provenance["phases"] = r.phases;
  r.log.push_back("evaluated " + std::to_string(eval.size()) + " records: f1=" +
                  std::to_string(r.metrics.f1));
}

std::vector<QARecord> Bootstrap(const std::vector<QARecord>& records,
                                std::uint64_t seed) {
  std::vector<QARecord> out;
  out.reserve(records.size());
  std::uint64_t state = Mix64(seed);
  for (std::size_t i = 0; i < records.size(); ++i) {
    state = Mix64(state);
    out.push_back(records[state % records.size()]);
  }
  return out;
}

template <typename T>
std::shared_ptr<const TrainableQAModel> Checked(T&& result, const char* what) {
  if (!result) throw BackendError(std::string(what) + " returned no model");
  return result;
}

}  // namespace

std::string RegimeKindName(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::kZeroShot: return "zero_shot";
    case RegimeKind::kFewShot: return "few_shot";
    case RegimeKind::kFurtherPretrain: return "further_pretrain";
    case RegimeKind::kJointMlmQa: return "joint_mlm_qa";
    case RegimeKind::kTriTraining: return "tri_training";
    case RegimeKind::kCrossLingualSimple: return "xling_simple";
    case RegimeKind::kCrossLingualMlm: return "xling_mlm";
    case RegimeKind::kAttributeHoldout: return "attribute_holdout";
    case RegimeKind::kPromptBaseline: return "prompt_baseline";
  }
  return "zero_shot";
}

RegimeKind ParseRegimeKind(const std::string& name) {
  for (RegimeKind k :
       {RegimeKind::kZeroShot, RegimeKind::kFewShot, RegimeKind::kFurtherPretrain,
        RegimeKind::kJointMlmQa, RegimeKind::kTriTraining,
        RegimeKind::kCrossLingualSimple, RegimeKind::kCrossLingualMlm,
        RegimeKind::kAttributeHoldout, RegimeKind::kPromptBaseline}) {
    if (RegimeKindName(k) == name) return k;
  }
  throw ValidationError("unknown regime kind '" + name + "'");
}

bool NeedsBudget(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::kFewShot:
    case RegimeKind::kFurtherPretrain:
    case RegimeKind::kJointMlmQa:
    case RegimeKind::kTriTraining:
    case RegimeKind::kCrossLingualSimple:
    case RegimeKind::kCrossLingualMlm:
      return true;
    default:
      return false;
  }
}

bool IsTraining(RegimeKind kind) {
  return kind != RegimeKind::kZeroShot && kind != RegimeKind::kPromptBaseline;
}

void RegimeSpec::Validate(std::optional<std::size_t> n_train_ads) const {
  const std::string name = RegimeKindName(kind);
  if (NeedsBudget(kind) && !budget) {
    throw ValidationError("regime " + name + " requires a budget");
  }
  if (budget && *budget == 0) throw ValidationError("budget must be positive");
  if (budget && n_train_ads && *budget > *n_train_ads) {
    throw ValidationError("budget " + std::to_string(*budget) + " exceeds the " +
                          std::to_string(*n_train_ads) + " available training ads");
  }
  if ((kind == RegimeKind::kFurtherPretrain || kind == RegimeKind::kJointMlmQa ||
       kind == RegimeKind::kTriTraining || kind == RegimeKind::kCrossLingualMlm) &&
      !unlabeled_corpus_ref) {
    throw ValidationError("regime " + name + " requires an unlabeled corpus");
  }
  if (kind == RegimeKind::kAttributeHoldout && !attribute) {
    throw ValidationError("regime attribute_holdout requires an attribute");
  }
  if (rounds && *rounds == 0) throw ValidationError("rounds must be positive");
}

nlohmann::ordered_json RegimeSpec::ToJson() const {
  nlohmann::ordered_json j;
  j["kind"] = RegimeKindName(kind);
  j["budget"] = budget ? nlohmann::ordered_json(*budget) : nlohmann::ordered_json();
  j["source_lang"] = std::string(LanguageCode(source_lang));
  j["target_lang"] = std::string(LanguageCode(target_lang));
  j["unlabeled_corpus_ref"] = unlabeled_corpus_ref
                                  ? nlohmann::ordered_json(*unlabeled_corpus_ref)
                                  : nlohmann::ordered_json();
  j["rounds"] = rounds ? nlohmann::ordered_json(*rounds) : nlohmann::ordered_json();
  j["attribute"] = attribute ? nlohmann::ordered_json(*attribute) : nlohmann::ordered_json();
  j["mapping"] = MappingModeName(mapping);
  return j;
}

RegimeSpec RegimeSpec::FromJson(const nlohmann::json& j) {
  RegimeSpec s;
  try {
    s.kind = ParseRegimeKind(j.at("kind").get<std::string>());
    if (j.contains("budget") && !j["budget"].is_null()) s.budget = j["budget"].get<std::size_t>();
    if (j.contains("source_lang")) s.source_lang = ParseLanguage(j["source_lang"].get<std::string>());
    if (j.contains("target_lang")) s.target_lang = ParseLanguage(j["target_lang"].get<std::string>());
    if (j.contains("unlabeled_corpus_ref") && !j["unlabeled_corpus_ref"].is_null()) {
      s.unlabeled_corpus_ref = j["unlabeled_corpus_ref"].get<std::string>();
    }
    if (j.contains("rounds") && !j["rounds"].is_null()) s.rounds = j["rounds"].get<std::size_t>();
    if (j.contains("attribute") && !j["attribute"].is_null()) {
      s.attribute = j["attribute"].get<std::string>();
    }
    if (j.contains("mapping")) s.mapping = ParseMappingMode(j["mapping"].get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("regime spec: ") + e.what());
  }
  return s;
}

std::string RegimeSpec::Hash() const {
  Fingerprinter fp;
  fp.AddField(ToJson().dump());
  return fp.hex();
}

RegimeRunResult RunZeroShot(const QAModel& model, const std::vector<QARecord>& eval,
                            const RunOptions& opts) {
  RegimeRunResult r = Begin(opts);
  r.phases = {"eval"};
  Finish(r, model, eval, opts);
  return r;
}

std::size_t CountAds(const std::vector<QARecord>& records) {
  std::set<std::string> ids;
  for (const auto& r : records) ids.insert(r.source_ad_id);
  return ids.size();
}

std::vector<QARecord> SampleBudget(const std::vector<QARecord>& train,
                                   std::size_t budget_ads, std::uint64_t seed) {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& r : train) {
    if (seen.insert(r.source_ad_id).second) ids.push_back(r.source_ad_id);
  }
  if (budget_ads > ids.size()) {
    throw ValidationError("budget of " + std::to_string(budget_ads) +
                          " ads exceeds the " + std::to_string(ids.size()) +
                          " available");
  }
  const auto ranked = RankIds(std::move(ids), seed);
  const std::set<std::string> chosen(ranked.begin(), ranked.begin() + budget_ads);
  std::vector<QARecord> out;
  for (const auto& r : train) {
    if (chosen.count(r.source_ad_id)) out.push_back(r);
  }
  return out;
}

RegimeRunResult RunFewShot(const TrainableQAModel& model,
                           const std::vector<QARecord>& train,
                           const std::vector<QARecord>& eval,
                           const TrainConfig& config, const RunOptions& opts) {
  RegimeRunResult r = Begin(opts);
  r.provenance["config"] = ConfigJson(config);
  r.provenance["datasets"]["train"] = DatasetHash(train);
  r.phases = {"qa"};
  const auto start = Clock::now();
  auto trained = FineTune(model, train, config);
  r.timing_ms["qa"] = MillisSince(start);
  r.log.push_back("qa: trained on " + std::to_string(train.size()) + " records from " +
                  std::to_string(CountAds(train)) + " ads");
  Finish(r, *trained, eval, opts);
  return r;
}

RegimeRunResult RunFurtherPretrain(const TrainableQAModel& model,
                                   const std::vector<std::string>& unlabeled_corpus,
                                   const std::vector<QARecord>& train,
                                   const std::vector<QARecord>& eval,
                                   const TrainConfig& config, const RunOptions& opts) {
  if (unlabeled_corpus.empty()) throw ValidationError("unlabeled corpus is empty");
  config.Validate();
  RegimeRunResult r = Begin(opts);
  r.provenance["config"] = ConfigJson(config);
  r.provenance["datasets"]["train"] = DatasetHash(train);
  r.provenance["datasets"]["unlabeled"] = CorpusHash(unlabeled_corpus);
  r.phases = {"mlm", "qa"};

  auto start = Clock::now();
  auto adapted = Checked(model.TrainMlm(unlabeled_corpus, config), "MLM training");
  r.timing_ms["mlm"] = MillisSince(start);
  r.log.push_back("mlm: " + std::to_string(unlabeled_corpus.size()) + " sentences -> " +
                  adapted->Fingerprint());

  start = Clock::now();
  auto trained = FineTune(*adapted, train, config);
  r.timing_ms["qa"] = MillisSince(start);
  r.log.push_back("qa: trained on " + std::to_string(train.size()) + " records");
  Finish(r, *trained, eval, opts);
  return r;
}

RegimeRunResult RunJointMlmQa(const TrainableQAModel& model,
                              const std::vector<std::string>& unlabeled_corpus,
                              const std::vector<QARecord>& train,
                              const std::vector<QARecord>& eval,
                              const TrainConfig& config, const RunOptions& opts) {
  if (unlabeled_corpus.empty()) throw ValidationError("unlabeled corpus is empty");
  if (train.empty()) throw ValidationError("cannot train on zero records");
  ValidateRecords(train);
  const JointSchedule schedule =
      MakeJointSchedule(train.size(), unlabeled_corpus.size(), config);
  RegimeRunResult r = Begin(opts);
  r.provenance["config"] = ConfigJson(config);
  r.provenance["datasets"]["train"] = DatasetHash(train);
  r.provenance["datasets"]["unlabeled"] = CorpusHash(unlabeled_corpus);
  r.provenance["schedule"] = {{"qa_steps", schedule.count(Objective::kQa)},
                              {"mlm_steps", schedule.count(Objective::kMlm)},
                              {"pattern", "qa,mlm"}};
  r.phases = {"joint"};
  const auto start = Clock::now();
  auto trained = Checked(model.TrainJoint(train, unlabeled_corpus, config, schedule),
                         "joint training");
  r.timing_ms["joint"] = MillisSince(start);
  r.log.push_back("joint: " + std::to_string(schedule.steps.size()) +
                  " steps alternating qa/mlm");
  Finish(r, *trained, eval, opts);
  return r;
}

std::optional<std::size_t> AgreeingPrediction(const std::vector<Prediction>& preds,
                                              Language lang,
                                              const NormalizationOptions& norm) {
  std::vector<std::string> normalized;
  for (const auto& p : preds) normalized.push_back(NormalizeAnswer(p.text, lang, norm));
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    for (std::size_t j = i + 1; j < normalized.size(); ++j) {
      if (normalized[i] == normalized[j]) return i;
    }
  }
  return std::nullopt;
}

RegimeRunResult RunTriTraining(const ModelFactory& factory,
                               const std::vector<QARecord>& labeled,
                               const std::vector<UnlabeledExample>& unlabeled,
                               const std::vector<QARecord>& eval,
                               const TrainConfig& config,
                               const TriTrainingOptions& tri,
                               const RunOptions& opts) {
  if (tri.rounds == 0) throw ValidationError("tri-training needs at least one round");
  if (labeled.empty()) throw ValidationError("tri-training needs labeled records");
  config.Validate();
  RegimeRunResult r = Begin(opts);
  r.provenance["config"] = ConfigJson(config);
  r.provenance["datasets"]["train"] = DatasetHash(labeled);
  r.provenance["rounds"] = tri.rounds;
  r.provenance["adopt_no_answer"] = tri.adopt_no_answer;

  auto make = [&factory](std::size_t round) {
    std::shared_ptr<const TrainableQAModel> m;
    try {
      m = factory();
    } catch (const std::exception& e) {
      throw BackendError("tri-training round " + std::to_string(round) +
                         ": model factory failed: " + e.what());
    }
    if (!m) {
      throw BackendError("tri-training round " + std::to_string(round) +
                         ": model factory returned null");
    }
    return m;
  };

  std::vector<QARecord> pool = labeled;
  std::vector<UnlabeledExample> remaining = unlabeled;
  const auto start = Clock::now();
  for (std::size_t round = 0; round < tri.rounds; ++round) {
    r.phases.push_back("tri_round_" + std::to_string(round));
    std::vector<std::shared_ptr<const TrainableQAModel>> voters;
    for (std::size_t m = 0; m < 3; ++m) {
      TrainConfig cfg = config;
      cfg.seed = config.seed + round * 3 + m;
      const auto sample = Bootstrap(pool, Mix64(cfg.seed) ^ 0x7472692d74726169ULL);
      voters.push_back(FineTune(*make(round), sample, cfg));
    }

    std::vector<UnlabeledExample> still;
    std::size_t adopted = 0;
    for (const auto& ex : remaining) {
      QARecord probe;
      probe.id = ex.id;
      probe.context = ex.context;
      probe.question = ex.question;
      probe.is_impossible = true;
      std::vector<Prediction> preds;
      for (const auto& v : voters) preds.push_back(PredictAnswer(*v, probe, opts.null_threshold));
      const auto winner = AgreeingPrediction(preds, opts.eval.language,
                                             opts.eval.normalization);
      const std::string norm =
          winner ? NormalizeAnswer(preds[*winner].text, opts.eval.language,
                                   opts.eval.normalization)
                 : std::string();
      const bool no_answer = winner && norm.empty();
      if (!winner || (no_answer && !tri.adopt_no_answer)) {
        still.push_back(ex);
        continue;
      }
      std::size_t votes = 0;
      for (const auto& p : preds) {
        if (NormalizeAnswer(p.text, opts.eval.language, opts.eval.normalization) == norm) {
          ++votes;
        }
      }
      QARecord rec;
      rec.id = ex.id;
      rec.context = ex.context;
      rec.question = ex.question;
      rec.attribute = ex.attribute;
      rec.source_ad_id = ex.source_ad_id;
      PseudoLabel label{round, ex.id, "", 0, votes};
      if (no_answer) {
        rec.is_impossible = true;
      } else {
        const Prediction& p = preds[*winner];
        rec.answers.push_back({p.text, p.char_start.value_or(0)});
        label.answer = p.text;
        label.char_start = p.char_start.value_or(0);
      }
      pool.push_back(std::move(rec));
      r.adopted.push_back(std::move(label));
      ++adopted;
    }
    remaining = std::move(still);
    r.adopted_per_round.push_back(adopted);
    r.log.push_back("tri-training round " + std::to_string(round) + ": adopted " +
                    std::to_string(adopted) + ", labeled set now " +
                    std::to_string(pool.size()));
  }
  r.timing_ms["tri_rounds"] = MillisSince(start);

  r.phases.push_back("qa");
  const auto final_start = Clock::now();
  auto final_model = FineTune(*make(tri.rounds), pool, config);
  r.timing_ms["qa"] = MillisSince(final_start);
  r.provenance["adopted_per_round"] = r.adopted_per_round;
  r.provenance["datasets"]["augmented_train"] = DatasetHash(pool);
  Finish(r, *final_model, eval, opts);
  return r;
}

RegimeRunResult RunCrossLingual(const TrainableQAModel& model,
                                const std::vector<QARecord>& source_train,
                                const std::vector<QARecord>& target_eval,
                                CrossLingualMode mode,
                                const std::vector<std::string>& target_unlabeled,
                                const TrainConfig& config, const RunOptions& opts) {
  if (mode == CrossLingualMode::kSimple) {
    RegimeRunResult r = RunFewShot(model, source_train, target_eval, config, opts);
    r.provenance["cross_lingual_mode"] = "simple";
    return r;
  }
  if (target_unlabeled.empty()) {
    throw ValidationError("MLM cross-lingual training needs target-language unlabeled text");
  }
  RegimeRunResult r =
      RunJointMlmQa(model, target_unlabeled, source_train, target_eval, config, opts);
  r.provenance["cross_lingual_mode"] = "mlm";
  return r;
}

std::vector<QARecord> WithoutAttribute(const std::vector<QARecord>& train,
                                       const std::string& attribute) {
  std::vector<QARecord> out;
  for (const auto& r : train) {
    if (r.attribute != attribute) out.push_back(r);
  }
  return out;
}

HoldoutResult RunAttributeHoldout(const ModelFactory& factory,
                                  const std::vector<QARecord>& train,
                                  const std::vector<QARecord>& eval,
                                  const std::string& attribute,
                                  const TrainConfig& config, const RunOptions& opts) {
  std::vector<QARecord> eval_attr;
  for (const auto& r : eval) {
    if (r.attribute == attribute) eval_attr.push_back(r);
  }
  if (eval_attr.empty()) {
    throw ValidationError("attribute '" + attribute + "' has no evaluation records");
  }
  const auto kept = WithoutAttribute(train, attribute);
  auto fresh = [&factory]() {
    auto m = factory();
    if (!m) throw BackendError("model factory returned null");
    return m;
  };
  auto standard = FineTune(*fresh(), train, config);
  auto heldout = FineTune(*fresh(), kept, config);

  auto score = [&](const QAModel& m) {
    const auto report = Evaluate(PredictAll(m, eval_attr, opts.null_threshold),
                                 eval_attr, opts.eval);
    return GroupScore{report.f1, report.exact_match, report.n};
  };
  HoldoutResult h;
  h.attribute = attribute;
  h.trained = score(*standard);
  h.heldout = score(*heldout);
  h.train_records = train.size();
  h.removed_records = train.size() - kept.size();
  h.trained_fingerprint = standard->Fingerprint();
  h.heldout_fingerprint = heldout->Fingerprint();
  return h;
}

std::string HoldoutTsv(const std::vector<HoldoutResult>& results) {
  std::ostringstream out;
  out << "attribute\ttrained_f1\theldout_f1\tn_eval\n";
  out.precision(4);
  out << std::fixed;
  for (const auto& h : results) {
    out << h.attribute << '\t' << h.trained.f1 << '\t' << h.heldout.f1 << '\t'
        << h.trained.n << '\n';
  }
  return out.str();
}

RegimeRunResult RunPromptBaseline(const PromptModel& model,
                                  const std::vector<QARecord>& eval,
                                  const RunOptions& opts) {
  RegimeRunResult r = Begin(opts);
  r.phases = {"prompt"};
  const auto start = Clock::now();
  std::vector<Prediction> preds;
  std::size_t mapped = 0;
  for (const auto& rec : eval) {
    std::string generation;
    try {
      generation = model.Generate(BuildPrompt(rec.context, rec.question));
    } catch (const std::exception& e) {
      throw BackendError("record " + rec.id + ": " + e.what());
    }
    Prediction p;
    p.record_id = rec.id;
    if (auto m = MapGeneration(rec.context, generation, opts.spec.mapping)) {
      p.text = m->span_text;
      p.char_start = m->char_start;
      ++mapped;
    }
    preds.push_back(std::move(p));
  }
  r.metrics = Evaluate(preds, eval, opts.eval);
  r.timing_ms["prompt"] = MillisSince(start);
  r.model_fingerprint = model.Fingerprint();
  r.provenance["model_fingerprint"] = r.model_fingerprint;
  r.provenance["datasets"]["eval"] = DatasetHash(eval);
  r.provenance["phases"] = r.phases;
  r.log.push_back("prompt: mapped " + std::to_string(mapped) + " of " +
                  std::to_string(eval.size()) + " generations (" +
                  MappingModeName(opts.spec.mapping) + ")");
  return r;
}

}  // namespace eventqa
