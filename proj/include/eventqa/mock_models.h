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

#ifndef EVENTQA_MOCK_MODELS_H_
#define EVENTQA_MOCK_MODELS_H_

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "eventqa/model.h"

// Deterministic in-process backends. They make every regime runnable and
// testable without neural checkpoints.
namespace eventqa {

// Answers with the first word of the context. Its no-answer score is -inf,
// so it answers at every null threshold.
class FirstTokenModel : public QAModel {
 public:
  SpanPrediction Predict(const std::string& context,
                         const std::string& question) const override;
  std::string Fingerprint() const override { return "mock.first_token"; }
};

// Always abstains (no-answer score +inf).
class NoAnswerModel : public QAModel {
 public:
  SpanPrediction Predict(const std::string& context,
                         const std::string& question) const override;
  std::string Fingerprint() const override { return "mock.no_answer"; }
};

// Answers from a reference set of gold records keyed by (context, question),
// abstaining on anything it does not know.
class OracleModel : public QAModel {
 public:
  explicit OracleModel(const std::vector<QARecord>& reference);
  SpanPrediction Predict(const std::string& context,
                         const std::string& question) const override;
  std::string Fingerprint() const override { return fingerprint_; }

 private:
  std::map<std::pair<std::string, std::string>, Answer> answers_;
  std::string fingerprint_;
};

// Memorizes training records. On a seen (context, question) pair it returns
// the first memorized gold answer, or abstains if that record was impossible.
// With `generalize`, an unseen pair falls back to the most frequent answer
// text learned for the same question that occurs verbatim in the context.
// MLM training changes the fingerprint but not the predictions.
class MemorizingModel : public TrainableQAModel {
 public:
  explicit MemorizingModel(bool generalize = false);

  SpanPrediction Predict(const std::string& context,
                         const std::string& question) const override;
  std::string Fingerprint() const override { return fingerprint_; }

  std::shared_ptr<const TrainableQAModel> Train(
      const std::vector<QARecord>& records, const TrainConfig& config) const override;
  std::shared_ptr<const TrainableQAModel> TrainMlm(
      const std::vector<std::string>& corpus, const TrainConfig& config) const override;
  std::shared_ptr<const TrainableQAModel> TrainJoint(
      const std::vector<QARecord>& records, const std::vector<std::string>& corpus,
      const TrainConfig& config, const JointSchedule& schedule) const override;

  std::size_t memorized() const { return memory_.size(); }

 private:
  struct Memory {
    bool impossible = false;
    Answer answer;
  };

  void Learn(const std::vector<QARecord>& records);

  bool generalize_;
  std::map<std::pair<std::string, std::string>, Memory> memory_;
  // question -> answer text -> count
  std::map<std::string, std::map<std::string, std::size_t>> lexicon_;
  std::string fingerprint_;
};

// Generates the gold answer of the prompted record, looked up in a reference
// set by exact prompt text; empty output when unknown.
class OraclePromptModel : public PromptModel {
 public:
  explicit OraclePromptModel(const std::vector<QARecord>& reference);
  std::string Generate(const std::string& prompt) const override;
  std::string Fingerprint() const override { return fingerprint_; }

 private:
  std::map<std::string, std::string> outputs_;
  std::string fingerprint_;
};

// Always generates the same text.
class ConstantPromptModel : public PromptModel {
 public:
  explicit ConstantPromptModel(std::string output) : output_(std::move(output)) {}
  std::string Generate(const std::string&) const override { return output_; }
  std::string Fingerprint() const override { return "mock.prompt_constant"; }

 private:
  std::string output_;
};

}  // namespace eventqa

#endif  // EVENTQA_MOCK_MODELS_H_
