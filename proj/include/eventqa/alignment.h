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

#ifndef EVENTQA_ALIGNMENT_H_
#define EVENTQA_ALIGNMENT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eventqa/translator.h"
#include "eventqa/types.h"

// Projection of gold answer spans into machine-translated contexts.
namespace eventqa {

inline constexpr double kDefaultMatchThreshold = 0.5;
inline constexpr std::size_t kWindowSweep = 5;  // k0 .. k0+4

// Levenshtein distance over code points.
std::size_t EditDistance(std::u32string_view a, std::u32string_view b);

// 1 - EditDistance / max(|s1|, |s2|) on case-folded, whitespace-collapsed
// strings. Two strings that normalize to empty score 1.
double Similarity(const std::string& s1, const std::string& s2);

struct SpanMatch {
  std::string span_text;     // verbatim slice of the searched context
  std::size_t char_start = 0;
  double score = 0.0;
  std::size_t k = 0;         // window size in words; 0 for verbatim hits

  bool operator==(const SpanMatch&) const = default;
};

// Best-scoring window of `k` consecutive whitespace-delimited words of
// `context`, if its similarity to `query` reaches `threshold`. Ties go to the
// leftmost window. Returns nullopt when the context has fewer than k words.
std::optional<SpanMatch> KgramBestMatch(const std::string& context,
                                        const std::string& query,
                                        std::size_t k,
                                        double threshold = kDefaultMatchThreshold);

// KgramBestMatch for k = k0 .. k0+sweep-1, keeping the highest score (ties to
// the smaller k).
std::optional<SpanMatch> SweepKgrams(const std::string& context,
                                     const std::string& query, std::size_t k0,
                                     double threshold = kDefaultMatchThreshold,
                                     std::size_t sweep = kWindowSweep);

enum class ProjectionSource {
  kNone,
  kTranslatedAnswer,  // matched using the translated answer
  kSourceAnswer,      // matched using the untranslated answer (fallback)
};

struct AlignmentProblem {
  std::string source_answer;       // a
  std::string translated_context;  // c^t
  std::string translated_answer;   // a^t
  std::size_t k0 = 1;              // max(words(a^t), words(a)), at least 1

  std::optional<SpanMatch> result;
  ProjectionSource source = ProjectionSource::kNone;

  static AlignmentProblem Make(std::string source_answer,
                               std::string translated_context,
                               std::string translated_answer);
};

// Finds the translated answer in the translated context: a verbatim
// occurrence wins outright with score 1; otherwise the k-gram sweep runs
// against the translated answer, then (if nothing reached the threshold) the
// same two steps run against the source answer. Fills `result` and `source`
// and returns the result; nullopt means the answer could not be projected.
std::optional<SpanMatch> ProjectAnswer(AlignmentProblem& problem,
                                       double threshold = kDefaultMatchThreshold);

struct AlignmentReport {
  std::size_t total = 0;                  // records seen
  std::size_t impossible = 0;             // kept without projection
  std::size_t projected_translated = 0;   // answers matched via a^t
  std::size_t projected_fallback = 0;     // answers matched via a
  std::size_t dropped_answers = 0;
  std::size_t discarded = 0;              // records with no surviving answer
  std::size_t kept = 0;

  AlignmentReport& operator+=(const AlignmentReport& other);
  std::string ToJson() const;
};

struct AlignOptions {
  Language source_lang = Language::kEnglish;
  Language target_lang = Language::kFrench;
  double threshold = kDefaultMatchThreshold;
};

// Translates one record. Impossible records translate the context only and
// are always kept. Answerable records keep the answers that project; with no
// survivors the result is nullopt. Translator failures propagate as
// TransportError. `report`, when given, is incremented.
std::optional<QARecord> AlignRecord(const QARecord& record,
                                    const std::string& target_question,
                                    Translator& translator,
                                    const AlignOptions& opts,
                                    AlignmentReport* report = nullptr);

// Aligns a dataset, looking up each record's target question by attribute.
std::vector<QARecord> AlignRecords(const std::vector<QARecord>& records,
                                   const AttributeQuestionMap& target_questions,
                                   Translator& translator,
                                   const AlignOptions& opts,
                                   AlignmentReport& report);

}  // namespace eventqa

#endif  // EVENTQA_ALIGNMENT_H_
