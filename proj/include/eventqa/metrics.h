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

#ifndef EVENTQA_METRICS_H_
#define EVENTQA_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eventqa/types.h"

namespace eventqa {

// Per-language article lists removed during answer normalization. English
// follows the usual SQuAD convention; French and Dutch default to none.
struct NormalizationOptions {
  std::map<Language, std::vector<std::string>> articles = {
      {Language::kEnglish, {"a", "an", "the"}},
      {Language::kFrench, {}},
      {Language::kDutch, {}},
  };

  static NormalizationOptions WithoutArticles();
};

// Case-fold, delete punctuation, split on whitespace, drop articles.
std::vector<std::string> Normalize(const std::string& text, Language lang,
                                   const NormalizationOptions& opts = {});
// Normalized tokens joined by single spaces.
std::string NormalizeAnswer(const std::string& text, Language lang,
                            const NormalizationOptions& opts = {});

// Token-bag F1 between a prediction and the best-matching gold. An empty gold
// list means "no answer": it scores 1 against an empty prediction, 0 against
// anything else.
double SpanF1(const std::string& prediction,
              const std::vector<std::string>& golds, Language lang,
              const NormalizationOptions& opts = {});
double ExactMatch(const std::string& prediction,
                  const std::vector<std::string>& golds, Language lang,
                  const NormalizationOptions& opts = {});

struct Prediction {
  std::string record_id;
  std::string text;  // empty = no answer
  std::optional<double> no_answer_score_margin;
  std::optional<std::size_t> char_start;
};

struct GroupScore {
  double f1 = 0.0;  // percentage
  double exact_match = 0.0;
  std::size_t n = 0;
};

struct LengthBucket {
  std::size_t lower = 0;                // inclusive, in words
  std::optional<std::size_t> upper;     // exclusive; none = unbounded
  GroupScore score;

  std::string label() const;
};

struct MetricsReport {
  double f1 = 0.0;
  double exact_match = 0.0;
  std::size_t n = 0;
  std::map<std::string, GroupScore> per_attribute;
  std::vector<LengthBucket> per_length_bucket;  // empty buckets omitted
};

struct EvaluateOptions {
  Language language = Language::kEnglish;
  NormalizationOptions normalization;
  // Strictly increasing word-count edges; none = quintiles of the records.
  std::optional<std::vector<std::size_t>> bucket_edges;
};

// Requires exactly one prediction per record. Throws ValidationError listing
// missing, duplicate or unknown prediction ids. Independent of input order.
MetricsReport Evaluate(const std::vector<Prediction>& predictions,
                       const std::vector<QARecord>& records,
                       const EvaluateOptions& opts = {});

// Per-record F1 in [0, 1], aligned with `records`.
std::vector<double> PerRecordF1(const std::vector<Prediction>& predictions,
                                const std::vector<QARecord>& records,
                                const EvaluateOptions& opts = {});

// Buckets records by context word count. Throws ValidationError unless
// `edges` is strictly increasing.
std::vector<LengthBucket> LengthBuckets(
    const std::vector<QARecord>& records,
    const std::vector<Prediction>& predictions,
    const std::vector<std::size_t>& edges, const EvaluateOptions& opts = {});

// Edges at the 20/40/60/80th percentiles of context word counts, deduplicated.
std::vector<std::size_t> QuintileEdges(const std::vector<QARecord>& records);

// Pairwise span-F1 agreement between two annotators, as a percentage. Each
// span of one annotator is scored against the other annotator's spans for the
// same (ad, attribute) as golds (0 when there are none). The mean over A's
// spans and the mean over B's spans are averaged. Two empty sets agree fully.
// Throws ValidationError if the two lists do not cover the same ad ids.
double PairwiseIaa(const std::vector<AdDocument>& annotator_a,
                   const std::vector<AdDocument>& annotator_b,
                   const NormalizationOptions& opts = {});

std::string MetricsToJson(const MetricsReport& report);
MetricsReport MetricsFromJson(const std::string& json_text);
// attribute, f1, exact_match, n
std::string PerAttributeTsv(const MetricsReport& report);

}  // namespace eventqa

#endif  // EVENTQA_METRICS_H_
