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

#include "eventqa/prompting.h"

#include "eventqa/errors.h"
#include "eventqa/utf8.h"

namespace eventqa {

MappingMode ParseMappingMode(const std::string& name) {
  if (name == "exact") return MappingMode::kExact;
  if (name == "fuzzy") return MappingMode::kFuzzy;
  throw ValidationError("unknown mapping mode '" + name + "' (exact or fuzzy)");
}

std::string MappingModeName(MappingMode mode) {
  return mode == MappingMode::kExact ? "exact" : "fuzzy";
}

std::string BuildPrompt(const std::string& context, const std::string& question) {
  return "Given the following passage: " + context +
         ", answer the following question. Note that the answer is present "
         "within the text. Question: " + question;
}

std::optional<SpanMatch> MapGeneration(const std::string& context,
                                       const std::string& generation,
                                       MappingMode mode, double threshold) {
  // Generators often pad their output with whitespace.
  const std::u32string cps = utf8::Decode(generation);
  const auto words = utf8::SplitWords(cps);
  if (words.empty()) return std::nullopt;
  const std::string trimmed = utf8::Encode(std::u32string_view(cps).substr(
      words.front().start, words.back().end - words.front().start));

  const std::size_t pos = utf8::Find(context, trimmed);
  if (pos != utf8::npos) return SpanMatch{trimmed, pos, 1.0, 0};
  if (mode == MappingMode::kExact) return std::nullopt;
  return KgramBestMatch(context, trimmed, words.size(), threshold);
}

}  // namespace eventqa
