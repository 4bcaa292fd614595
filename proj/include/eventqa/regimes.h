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

#ifndef EVENTQA_REGIMES_H_
#define EVENTQA_REGIMES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eventqa/conversion.h"
#include "eventqa/metrics.h"
#include "eventqa/model.h"
#include "eventqa/prompting.h"
#include "eventqa/types.h"

namespace eventqa {

enum class RegimeKind {
  kZeroShot,
  kFewShot,
  kFurtherPretrain,
  kJointMlmQa,
  kTriTraining,
  kCrossLingualSimple,
  kCrossLingualMlm,
  kAttributeHoldout,
  kPromptBaseline,
};

std::string RegimeKindName(RegimeKind kind);
// Throws ValidationError for unknown names.
RegimeKind ParseRegimeKind(const std::string& name);
// Kinds that train on a sampled ad budget.
bool NeedsBudget(RegimeKind kind);
bool IsTraining(RegimeKind kind);

struct RegimeSpec {
  RegimeKind kind = RegimeKind::kZeroShot;
  std::optional<std::size_t> budget;  // in ads
  Language source_lang = Language::kEnglish;
  Language target_lang = Language::kEnglish;
  std::optional<std::string> unlabeled_corpus_ref;
  std::optional<std::size_t> rounds;     // tri-training
  std::optional<std::string> attribute;  // attribute holdout
  MappingMode mapping = MappingMode::kExact;

  // Throws ValidationError if a required field is missing or the budget
  // exceeds the available training ads.
  void Validate(std::optional<std::size_t> n_train_ads = std::nullopt) const;
  nlohmann::ordered_json ToJson() const;
  static RegimeSpec FromJson(const nlohmann::json& j);
  std::string Hash() const;
};

struct PseudoLabel {
  std::size_t round = 0;
  std::string record_id;
  std::string answer;  // empty = agreed no-answer
  std::size_t char_start = 0;
  std::size_t votes = 0;
};

struct RegimeRunResult {
  RegimeSpec spec;
  MetricsReport metrics;
  std::string model_fingerprint;
  std::vector<std::string> phases;
  std::map<std::string, double> timing_ms;
  // Everything needed to re-execute the run: spec, config, seeds, dataset
  // hashes. Contains no wall-clock data.
  nlohmann::ordered_json provenance;
  std::vector<std::string> log;
  std::vector<std::size_t> adopted_per_round;
  std::vector<PseudoLabel> adopted;
};

struct RunOptions {
  RegimeSpec spec;
  EvaluateOptions eval;
  double null_threshold = kDefaultNullThreshold;
};

RegimeRunResult RunZeroShot(const QAModel& model, const std::vector<QARecord>& eval,
                            const RunOptions& opts);

// Records of `budget_ads` ads chosen by seeded hash rank, in input order.
// For a fixed seed smaller budgets select subsets of larger ones. Throws
// ValidationError if the budget exceeds the number of ads.
std::vector<QARecord> SampleBudget(const std::vector<QARecord>& train,
                                   std::size_t budget_ads, std::uint64_t seed);
std::size_t CountAds(const std::vector<QARecord>& records);

RegimeRunResult RunFewShot(const TrainableQAModel& model,
                           const std::vector<QARecord>& train,
                           const std::vector<QARecord>& eval,
                           const TrainConfig& config, const RunOptions& opts);

// MLM phase on the unlabeled corpus, then QA fine-tuning.
RegimeRunResult RunFurtherPretrain(const TrainableQAModel& model,
                                   const std::vector<std::string>& unlabeled_corpus,
                                   const std::vector<QARecord>& train,
                                   const std::vector<QARecord>& eval,
                                   const TrainConfig& config, const RunOptions& opts);

// Both objectives trained together, interleaved 1:1 per step.
RegimeRunResult RunJointMlmQa(const TrainableQAModel& model,
                              const std::vector<std::string>& unlabeled_corpus,
                              const std::vector<QARecord>& train,
                              const std::vector<QARecord>& eval,
                              const TrainConfig& config, const RunOptions& opts);

using ModelFactory = std::function<std::shared_ptr<const TrainableQAModel>()>;

struct TriTrainingOptions {
  std::size_t rounds = 1;
  // Whether agreement on "no answer" adopts an impossible record.
  bool adopt_no_answer = true;
};

// Index of the first prediction whose normalized answer is shared by at
// least one other prediction, or nullopt when all differ.
std::optional<std::size_t> AgreeingPrediction(const std::vector<Prediction>& preds,
                                              Language lang,
                                              const NormalizationOptions& norm = {});

// Each round trains three models on differently seeded bootstrap resamples of
// the labeled set; unlabeled examples on which at least two agree join the
// labeled set with the agreed answer. A fresh model is then trained on the
// final labeled set and evaluated. Factory failures abort with the round.
RegimeRunResult RunTriTraining(const ModelFactory& factory,
                               const std::vector<QARecord>& labeled,
                               const std::vector<UnlabeledExample>& unlabeled,
                               const std::vector<QARecord>& eval,
                               const TrainConfig& config,
                               const TriTrainingOptions& tri,
                               const RunOptions& opts);

enum class CrossLingualMode { kSimple, kMlm };

// simple: fine-tune on source-language records, evaluate on the target.
// mlm: joint training with target-language unlabeled text (required).
RegimeRunResult RunCrossLingual(const TrainableQAModel& model,
                                const std::vector<QARecord>& source_train,
                                const std::vector<QARecord>& target_eval,
                                CrossLingualMode mode,
                                const std::vector<std::string>& target_unlabeled,
                                const TrainConfig& config, const RunOptions& opts);

struct HoldoutResult {
  std::string attribute;
  GroupScore trained;  // standard training
  GroupScore heldout;  // attribute removed from training
  std::size_t train_records = 0;    // standard training set size
  std::size_t removed_records = 0;
  std::string trained_fingerprint;
  std::string heldout_fingerprint;
};

// Throws ValidationError if the attribute has no evaluation records.
HoldoutResult RunAttributeHoldout(const ModelFactory& factory,
                                  const std::vector<QARecord>& train,
                                  const std::vector<QARecord>& eval,
                                  const std::string& attribute,
                                  const TrainConfig& config, const RunOptions& opts);

// attribute, trained_f1, heldout_f1, n_eval
std::string HoldoutTsv(const std::vector<HoldoutResult>& results);

RegimeRunResult RunPromptBaseline(const PromptModel& model,
                                  const std::vector<QARecord>& eval,
                                  const RunOptions& opts);

// Records of `train` whose attribute differs from `attribute`.
std::vector<QARecord> WithoutAttribute(const std::vector<QARecord>& train,
                                       const std::string& attribute);

}  // namespace eventqa

#endif  // EVENTQA_REGIMES_H_
