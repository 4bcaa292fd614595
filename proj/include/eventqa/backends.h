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

#ifndef EVENTQA_BACKENDS_H_
#define EVENTQA_BACKENDS_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "eventqa/model.h"
#include "eventqa/perplexity.h"

// Name-keyed backend registry. Names are matched exactly, or by the longest
// registered prefix ending in '.' or ':' (so "hf." serves "hf.roberta-base").
//
// Built in:
//   QA:      mock.first_token, mock.no_answer, mock.oracle (answers from the
//            reference records), mock.memorize, mock.lexicon (trainable)
//   prompt:  mock.prompt_oracle, mock.prompt_none
//   scorer:  mock.uniform:<V>, unigram:<training text file>
//
// Unknown names throw ValidationError.
namespace eventqa {

struct BackendContext {
  // Gold records oracle backends answer from (usually the evaluation set).
  const std::vector<QARecord>* reference = nullptr;
};

using QaFactory = std::function<std::shared_ptr<const QAModel>(
    const std::string& name, const BackendContext& ctx)>;
using PromptFactory = std::function<std::shared_ptr<const PromptModel>(
    const std::string& name, const BackendContext& ctx)>;
using ScorerFactory =
    std::function<std::shared_ptr<const MaskedScorer>(const std::string& name)>;

void RegisterQaBackend(const std::string& name, QaFactory factory);
void RegisterPromptBackend(const std::string& name, PromptFactory factory);
void RegisterScorerBackend(const std::string& name, ScorerFactory factory);

std::shared_ptr<const QAModel> MakeQaModel(const std::string& name,
                                           const BackendContext& ctx = {});
// Throws ValidationError if the backend is not trainable.
std::shared_ptr<const TrainableQAModel> MakeTrainableQaModel(
    const std::string& name, const BackendContext& ctx = {});
std::shared_ptr<const PromptModel> MakePromptModel(const std::string& name,
                                                   const BackendContext& ctx = {});
std::shared_ptr<const MaskedScorer> MakeScorer(const std::string& name);

bool HasQaBackend(const std::string& name);
std::vector<std::string> RegisteredQaBackends();

}  // namespace eventqa

#endif  // EVENTQA_BACKENDS_H_
