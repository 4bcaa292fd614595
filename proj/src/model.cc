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

#include "eventqa/model.h"

#include <algorithm>
#include <cmath>

#include "eventqa/errors.h"
#include "eventqa/hashing.h"

namespace eventqa {

void TrainConfig::Validate() const {
  if (epochs <= 0) throw ValidationError("epochs must be positive");
  if (!(learning_rate > 0.0)) throw ValidationError("learning_rate must be positive");
  if (batch_size <= 0) throw ValidationError("batch_size must be positive");
  if (joint_qa_batch_size <= 0 || joint_mlm_batch_size <= 0) {
    throw ValidationError("joint batch sizes must be positive");
  }
  if (joint_qa_batch_size + joint_mlm_batch_size != batch_size) {
    throw ValidationError("joint QA and MLM batch sizes must sum to batch_size");
  }
  if (weight_decay < 0.0) throw ValidationError("weight_decay must be non-negative");
  if (max_sequence_length <= 0) {
    throw ValidationError("max_sequence_length must be positive");
  }
}

std::string TrainConfig::Hash() const {
  Fingerprinter fp;
  fp.Add(static_cast<std::uint64_t>(epochs))
      .AddField(std::to_string(learning_rate))
      .Add(static_cast<std::uint64_t>(batch_size))
      .Add(static_cast<std::uint64_t>(joint_qa_batch_size))
      .Add(static_cast<std::uint64_t>(joint_mlm_batch_size))
      .AddField(std::to_string(weight_decay))
      .Add(static_cast<std::uint64_t>(max_sequence_length))
      .Add(seed);
  return fp.hex();
}

std::size_t JointSchedule::count(Objective o) const {
  return static_cast<std::size_t>(std::count(steps.begin(), steps.end(), o));
}

std::string JointSchedule::ToString() const {
  std::string out;
  for (Objective o : steps) {
    if (!out.empty()) out += ',';
    out += o == Objective::kQa ? "qa" : "mlm";
  }
  return out;
}

JointSchedule MakeJointSchedule(std::size_t n_records, std::size_t n_sentences,
                                const TrainConfig& config) {
  config.Validate();
  auto steps = [&](std::size_t n, int batch) {
    const std::size_t b = static_cast<std::size_t>(batch);
    return static_cast<std::size_t>(config.epochs) * ((n + b - 1) / b);
  };
  const std::size_t per_objective =
      std::max(steps(n_records, config.joint_qa_batch_size),
               steps(n_sentences, config.joint_mlm_batch_size));
  JointSchedule schedule;
  schedule.steps.reserve(2 * per_objective);
  for (std::size_t i = 0; i < per_objective; ++i) {
    schedule.steps.push_back(Objective::kQa);
    schedule.steps.push_back(Objective::kMlm);
  }
  return schedule;
}

Prediction PredictAnswer(const QAModel& model, const QARecord& record,
                         double null_threshold) {
  SpanPrediction raw;
  try {
    raw = model.Predict(record.context, record.question);
  } catch (const std::exception& e) {
    throw BackendError("record " + record.id + ": " + e.what());
  }
  if (!raw.span_text.empty() &&
      !SpanMatchesAt(record.context, raw.span_text, raw.char_start)) {
    throw BackendError("record " + record.id + ": predicted span '" +
                       raw.span_text + "' is not verbatim at offset " +
                       std::to_string(raw.char_start));
  }
  Prediction p;
  p.record_id = record.id;
  const double margin = raw.no_answer_score - raw.answer_score;
  if (!std::isnan(margin)) p.no_answer_score_margin = margin;
  const bool abstain = raw.span_text.empty() || margin > null_threshold;
  if (!abstain) {
    p.text = raw.span_text;
    p.char_start = raw.char_start;
  }
  return p;
}

std::vector<Prediction> PredictAll(const QAModel& model,
                                   const std::vector<QARecord>& records,
                                   double null_threshold) {
  std::vector<Prediction> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(PredictAnswer(model, r, null_threshold));
  return out;
}

std::shared_ptr<const TrainableQAModel> FineTune(
    const TrainableQAModel& model, const std::vector<QARecord>& records,
    const TrainConfig& config) {
  if (records.empty()) throw ValidationError("cannot fine-tune on zero records");
  ValidateRecords(records);
  config.Validate();
  auto trained = model.Train(records, config);
  if (!trained) throw BackendError("backend returned no model");
  if (trained->Fingerprint() == model.Fingerprint()) {
    throw BackendError("training left the model fingerprint unchanged");
  }
  return trained;
}

}  // namespace eventqa
