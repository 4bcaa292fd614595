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

#include "eventqa/mock_models.h"

#include <limits>

#include "eventqa/hashing.h"
#include "eventqa/prompting.h"
#include "eventqa/squad_io.h"
#include "eventqa/utf8.h"

namespace eventqa {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SpanPrediction Abstain() { return {"", 0, 0.0, kInf}; }

SpanPrediction Answering(const Answer& a) {
  return {a.text, a.answer_start, 1.0, 0.0};
}

}  // namespace

SpanPrediction FirstTokenModel::Predict(const std::string& context,
                                        const std::string&) const {
  const std::u32string text = utf8::Decode(context);
  const auto words = utf8::SplitWords(text);
  if (words.empty()) return Abstain();
  const auto& w = words.front();
  return {utf8::Encode(std::u32string_view(text).substr(w.start, w.end - w.start)),
          w.start, 0.0, -kInf};
}

SpanPrediction NoAnswerModel::Predict(const std::string&,
                                      const std::string&) const {
  return Abstain();
}

OracleModel::OracleModel(const std::vector<QARecord>& reference) {
  for (const auto& r : reference) {
    if (!r.answers.empty()) answers_.emplace(std::make_pair(r.context, r.question), r.answers.front());
  }
  fingerprint_ = "mock.oracle:" + DatasetHash(reference);
}

SpanPrediction OracleModel::Predict(const std::string& context,
                                    const std::string& question) const {
  auto it = answers_.find({context, question});
  return it == answers_.end() ? Abstain() : Answering(it->second);
}

MemorizingModel::MemorizingModel(bool generalize)
    : generalize_(generalize),
      fingerprint_(generalize ? "mock.lexicon" : "mock.memorize") {}

SpanPrediction MemorizingModel::Predict(const std::string& context,
                                        const std::string& question) const {
  auto it = memory_.find({context, question});
  if (it != memory_.end()) {
    return it->second.impossible ? Abstain() : Answering(it->second.answer);
  }
  if (!generalize_) return Abstain();
  auto lex = lexicon_.find(question);
  if (lex == lexicon_.end()) return Abstain();
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  std::size_t best_pos = 0;
  for (const auto& [text, count] : lex->second) {
    if (count <= best_count) continue;
    const std::size_t pos = utf8::Find(context, text);
    if (pos == utf8::npos) continue;
    best = &text;
    best_count = count;
    best_pos = pos;
  }
  if (!best) return Abstain();
  return {*best, best_pos, 0.5, 0.0};
}

void MemorizingModel::Learn(const std::vector<QARecord>& records) {
  for (const auto& r : records) {
    Memory m;
    m.impossible = r.answers.empty();
    if (!m.impossible) m.answer = r.answers.front();
    memory_.insert_or_assign({r.context, r.question}, m);
    for (const auto& a : r.answers) ++lexicon_[r.question][a.text];
  }
}

std::shared_ptr<const TrainableQAModel> MemorizingModel::Train(
    const std::vector<QARecord>& records, const TrainConfig& config) const {
  auto next = std::make_shared<MemorizingModel>(*this);
  next->Learn(records);
  Fingerprinter fp;
  fp.AddField(fingerprint_).AddField("qa").AddField(config.Hash())
      .AddField(DatasetHash(records));
  next->fingerprint_ = (generalize_ ? "mock.lexicon:" : "mock.memorize:") + fp.hex();
  return next;
}

std::shared_ptr<const TrainableQAModel> MemorizingModel::TrainMlm(
    const std::vector<std::string>& corpus, const TrainConfig& config) const {
  auto next = std::make_shared<MemorizingModel>(*this);
  Fingerprinter fp;
  fp.AddField(fingerprint_).AddField("mlm").AddField(config.Hash());
  for (const auto& s : corpus) fp.AddField(s);
  next->fingerprint_ = (generalize_ ? "mock.lexicon:" : "mock.memorize:") + fp.hex();
  return next;
}

std::shared_ptr<const TrainableQAModel> MemorizingModel::TrainJoint(
    const std::vector<QARecord>& records, const std::vector<std::string>& corpus,
    const TrainConfig& config, const JointSchedule& schedule) const {
  auto next = std::make_shared<MemorizingModel>(*this);
  next->Learn(records);
  Fingerprinter fp;
  fp.AddField(fingerprint_).AddField("joint").AddField(config.Hash())
      .AddField(DatasetHash(records)).AddField(schedule.ToString());
  for (const auto& s : corpus) fp.AddField(s);
  next->fingerprint_ = (generalize_ ? "mock.lexicon:" : "mock.memorize:") + fp.hex();
  return next;
}

OraclePromptModel::OraclePromptModel(const std::vector<QARecord>& reference) {
  for (const auto& r : reference) {
    outputs_[BuildPrompt(r.context, r.question)] =
        r.answers.empty() ? std::string() : r.answers.front().text;
  }
  fingerprint_ = "mock.prompt_oracle:" + DatasetHash(reference);
}

std::string OraclePromptModel::Generate(const std::string& prompt) const {
  auto it = outputs_.find(prompt);
  return it == outputs_.end() ? std::string() : it->second;
}

}  // namespace eventqa
