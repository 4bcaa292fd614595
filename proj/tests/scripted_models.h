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

#ifndef EVENTQA_TESTS_SCRIPTED_MODELS_H_
#define EVENTQA_TESTS_SCRIPTED_MODELS_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eventqa/model.h"
#include "eventqa/utf8.h"

namespace eventqa::testing {

// Tri-training voter. Training picks member `seed % 3`; the member answers
// each context with the word script[member][context] (0-based word index),
// or abstains when the entry is negative or missing. Untrained instances
// behave as member 0.
class ScriptedVoter : public TrainableQAModel {
 public:
  using Script = std::map<std::string, std::vector<int>>;  // context -> per member

  explicit ScriptedVoter(std::shared_ptr<const Script> script, int member = 0,
                         std::string fingerprint = "scripted")
      : script_(std::move(script)), member_(member), fingerprint_(std::move(fingerprint)) {}

  SpanPrediction Predict(const std::string& context, const std::string&) const override {
    SpanPrediction out;
    out.no_answer_score = 1.0;
    auto it = script_->find(context);
    if (it == script_->end()) return out;
    const int word = it->second[static_cast<std::size_t>(member_)];
    const auto words = utf8::SplitWords(utf8::Decode(context));
    if (word < 0 || static_cast<std::size_t>(word) >= words.size()) return out;
    const auto& w = words[static_cast<std::size_t>(word)];
    out.span_text = utf8::Substr(context, w.start, w.end - w.start);
    out.char_start = w.start;
    out.answer_score = 2.0;
    return out;
  }
  std::string Fingerprint() const override { return fingerprint_; }

  std::shared_ptr<const TrainableQAModel> Train(const std::vector<QARecord>& records,
                                                const TrainConfig& config) const override {
    return std::make_shared<ScriptedVoter>(
        script_, static_cast<int>(config.seed % 3),
        fingerprint_ + "/" + std::to_string(config.seed) + ":" +
            std::to_string(records.size()));
  }
  std::shared_ptr<const TrainableQAModel> TrainMlm(const std::vector<std::string>&,
                                                   const TrainConfig&) const override {
    return std::make_shared<ScriptedVoter>(script_, member_, fingerprint_ + "+mlm");
  }
  std::shared_ptr<const TrainableQAModel> TrainJoint(const std::vector<QARecord>& records,
                                                     const std::vector<std::string>&,
                                                     const TrainConfig& config,
                                                     const JointSchedule&) const override {
    return Train(records, config);
  }

 private:
  std::shared_ptr<const Script> script_;
  int member_;
  std::string fingerprint_;
};

}  // namespace eventqa::testing

#endif  // EVENTQA_TESTS_SCRIPTED_MODELS_H_
