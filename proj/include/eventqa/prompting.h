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

#ifndef EVENTQA_PROMPTING_H_
#define EVENTQA_PROMPTING_H_

#include <optional>
#include <string>

#include "eventqa/alignment.h"

namespace eventqa {

enum class MappingMode { kExact, kFuzzy };

MappingMode ParseMappingMode(const std::string& name);
std::string MappingModeName(MappingMode mode);

// Extractive-QA prompt template used by instruction-tuned generators.
std::string BuildPrompt(const std::string& context, const std::string& question);

// Maps a free-text generation back onto a context span. Exact mode accepts
// only a verbatim occurrence (first one); fuzzy mode additionally accepts the
// best k-gram window, with k the generation's word count. Empty or unmappable
// generations yield nullopt, i.e. no answer.
std::optional<SpanMatch> MapGeneration(const std::string& context,
                                       const std::string& generation,
                                       MappingMode mode,
                                       double threshold = kDefaultMatchThreshold);

}  // namespace eventqa

#endif  // EVENTQA_PROMPTING_H_
