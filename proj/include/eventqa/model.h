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

#ifndef EVENTQA_MODEL_H_
#define EVENTQA_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "eventqa/metrics.h"
#include "eventqa/types.h"

namespace eventqa {

// Raw output of an extractive QA backend. An empty span_text means the model
// abstains; otherwise span_text must occur verbatim in the context at
// char_start (code points).
struct SpanPrediction {
  std::string span_text;
  std::size_t char_start = 0;
  double answer_score = 0.0;
  double no_answer_score = 0.0;
};

// Inference-only QA model. Predict must be safe to call concurrently.
class QAModel {
 public:
  virtual ~QAModel() = default;
  virtual SpanPrediction Predict(const std::string& context,
                                 const std::string& question) const = 0;
  virtual std::string Fingerprint() const = 0;
};

// Fine-tuning hyperparameters. Defaults are the reference training setup.
struct TrainConfig {
  int epochs = 5;
  double learning_rate = 5e-5;
  int batch_size = 32;
  // Joint MLM+QA training splits each batch between the two objectives.
  int joint_qa_batch_size = 16;
  int joint_mlm_batch_size = 16;
  double weight_decay = 0.0;
  int max_sequence_length = 256;
  std::uint64_t seed = 0;

  // Throws ValidationError on non-positive sizes/rates, negative weight decay
  // or joint batch halves that do not sum to batch_size.
  void Validate() const;
  std::string Hash() const;

  bool operator==(const TrainConfig&) const = default;
};

enum class Objective { kQa, kMlm };

// Step-level interleaving of the two objectives of joint training.
struct JointSchedule {
  std::vector<Objective> steps;

  std::size_t count(Objective o) const;
  std::string ToString() const;  // e.g. "qa,mlm,qa,mlm"
};

// Strict 1:1 alternation starting with QA. Each objective gets
// max(qa_steps, mlm_steps) steps, where an objective's step count is
// epochs * ceil(examples / its batch size); the shorter stream cycles.
JointSchedule MakeJointSchedule(std::size_t n_records, std::size_t n_sentences,
                                const TrainConfig& config);

// A QA model that can be trained. Training is functional: it returns a new
// model and leaves this one untouched.
class TrainableQAModel : public QAModel {
 public:
  virtual std::shared_ptr<const TrainableQAModel> Train(
      const std::vector<QARecord>& records, const TrainConfig& config) const = 0;

  // Masked-LM training on unlabeled sentences.
  virtual std::shared_ptr<const TrainableQAModel> TrainMlm(
      const std::vector<std::string>& corpus, const TrainConfig& config) const = 0;

  // Simultaneous QA + MLM training following `schedule`.
  virtual std::shared_ptr<const TrainableQAModel> TrainJoint(
      const std::vector<QARecord>& records, const std::vector<std::string>& corpus,
      const TrainConfig& config, const JointSchedule& schedule) const = 0;
};

// Text-to-text generator used for the prompting baseline.
class PromptModel {
 public:
  virtual ~PromptModel() = default;
  virtual std::string Generate(const std::string& prompt) const = 0;
  virtual std::string Fingerprint() const = 0;
};

inline constexpr double kDefaultNullThreshold = 0.0;

// Runs the model on one record. The prediction is empty when
// no_answer_score - answer_score > null_threshold. Backend exceptions and
// spans that are not verbatim in the context are rethrown as BackendError
// naming the record.
Prediction PredictAnswer(const QAModel& model, const QARecord& record,
                         double null_threshold = kDefaultNullThreshold);

std::vector<Prediction> PredictAll(const QAModel& model,
                                   const std::vector<QARecord>& records,
                                   double null_threshold = kDefaultNullThreshold);

// Validates inputs and trains. Throws ValidationError for empty records or a
// bad config, BackendError if the backend returns a model with an unchanged
// fingerprint.
std::shared_ptr<const TrainableQAModel> FineTune(
    const TrainableQAModel& model, const std::vector<QARecord>& records,
    const TrainConfig& config);

}  // namespace eventqa

#endif  // EVENTQA_MODEL_H_
