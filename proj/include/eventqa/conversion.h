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

#ifndef EVENTQA_CONVERSION_H_
#define EVENTQA_CONVERSION_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eventqa/corpus.h"
#include "eventqa/metrics.h"
#include "eventqa/model.h"
#include "eventqa/types.h"

namespace eventqa {

struct ConversionOptions {
  // Also emit one impossible record per mapped attribute absent from the ad.
  bool emit_negatives = true;
  // Discard annotations whose attribute is not in the map instead of failing.
  bool drop_unknown_attributes = false;
};

// Converts one ad into QA records, in question-map order. Each attribute with
// at least one valid annotation yields one answerable record carrying all its
// spans as gold answers (sorted by offset, duplicates removed); record ids
// are "<ad_id>::<attribute>". Annotations that are not verbatim at their
// offset are skipped and appended to `discards`. An annotation attribute
// missing from the map throws ValidationError unless dropping is enabled.
std::vector<QARecord> AdToRecords(const AdDocument& ad,
                                  const AttributeQuestionMap& qmap,
                                  const ConversionOptions& opts = {},
                                  std::vector<Discard>* discards = nullptr);

struct ConversionReport {
  std::size_t n_ads = 0;
  std::size_t answerable_records = 0;
  std::size_t impossible_records = 0;
  std::size_t answer_spans = 0;  // annotations that became gold answers
  std::size_t discarded = 0;

  std::string ToJson() const;
};

struct ConversionResult {
  std::vector<QARecord> records;
  std::vector<Discard> discards;
  ConversionReport report;
};

// Output order follows input order.
ConversionResult ConvertCorpus(const std::vector<AdDocument>& ads,
                               const AttributeQuestionMap& qmap,
                               const ConversionOptions& opts = {});

// Seeded ad-level split converted to records.
DatasetSplit SplitByAd(const std::vector<AdDocument>& ads,
                       const AttributeQuestionMap& qmap, double train_fraction,
                       std::uint64_t seed, const ConversionOptions& opts = {});

// Unlabeled QA examples (no answers), e.g. for semi-supervised training.
struct UnlabeledExample {
  std::string id;
  std::string context;
  std::string question;
  std::string attribute;
  std::string source_ad_id;
};

// One example per (ad, mapped attribute), answers stripped.
std::vector<UnlabeledExample> MakeUnlabeledExamples(
    const std::vector<AdDocument>& ads, const AttributeQuestionMap& qmap);
std::vector<UnlabeledExample> StripAnswers(const std::vector<QARecord>& records);

struct QuestionCandidateSet {
  std::string attribute;
  std::vector<std::string> candidates;
  std::optional<std::vector<double>> scores;  // parallel to candidates, in [0, 1]

  // Throws ValidationError on an empty candidate list or malformed scores.
  void Validate() const;
};

struct QuestionSelection {
  std::string attribute;
  std::vector<std::string> candidates;
  std::vector<double> scores;
  std::size_t selected = 0;

  const std::string& question() const { return candidates[selected]; }
};

// Argmax with ties going to the lowest index. Throws ValidationError if empty.
std::size_t ArgmaxScore(const std::vector<double>& scores);

using RecordsBuilder = std::function<std::vector<QARecord>(const std::string& question)>;

// Scores every candidate by the SQuAD-v2 F1 (as a ratio) a frozen model
// reaches on the records built with that question, and picks the best.
// Candidates with precomputed scores are not re-scored.
QuestionSelection SelectBestQuestion(const QuestionCandidateSet& candidates,
                                     const RecordsBuilder& build_records,
                                     const QAModel& frozen_model,
                                     const EvaluateOptions& eval = {},
                                     double null_threshold = kDefaultNullThreshold);

// Records for one attribute over a set of (training) ads, asking `question`.
RecordsBuilder AttributeRecordsBuilder(const std::vector<AdDocument>& ads,
                                       const std::string& attribute,
                                       const ConversionOptions& opts = {});

struct QuestionGrid {
  AttributeQuestionMap map;
  std::vector<QuestionSelection> selections;
};

// Selects one question per attribute, in `attributes` order. Throws
// ValidationError naming any attribute without a candidate set.
QuestionGrid BuildQuestionGrid(const std::vector<std::string>& attributes,
                               const std::vector<QuestionCandidateSet>& candidate_sets,
                               const std::vector<AdDocument>& train_ads,
                               const QAModel& frozen_model,
                               const ConversionOptions& opts = {},
                               const EvaluateOptions& eval = {});

// "attribute<TAB>candidate<TAB>f1<TAB>selected" rows with a header.
std::string SelectionProvenanceTsv(const std::vector<QuestionSelection>& selections);

}  // namespace eventqa

#endif  // EVENTQA_CONVERSION_H_
