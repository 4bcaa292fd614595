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

#include "eventqa/conversion.h"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eventqa/errors.h"

namespace eventqa {

std::vector<QARecord> AdToRecords(const AdDocument& ad,
                                  const AttributeQuestionMap& qmap,
                                  const ConversionOptions& opts,
                                  std::vector<Discard>* discards) {
  std::map<std::string, std::vector<Answer>> by_attribute;
  for (const auto& ann : ad.annotations) {
    if (!qmap.Contains(ann.attribute)) {
      if (!opts.drop_unknown_attributes) {
        throw ValidationError("ad " + ad.id + ": attribute '" + ann.attribute +
                              "' is not in the question map");
      }
      if (discards) {
        discards->push_back({ad.id, ann.attribute, ann.span_text,
                             "attribute not in question map"});
      }
      continue;
    }
    if (ann.span_text.empty() ||
        !SpanMatchesAt(ad.text, ann.span_text, ann.char_start)) {
      if (discards) {
        discards->push_back({ad.id, ann.attribute, ann.span_text,
                             "span not verbatim at char_start " +
                                 std::to_string(ann.char_start)});
      }
      continue;
    }
    by_attribute[ann.attribute].push_back({ann.span_text, ann.char_start});
  }

  std::vector<QARecord> records;
  for (const auto& [attribute, question] : qmap.entries()) {
    auto it = by_attribute.find(attribute);
    const bool answerable = it != by_attribute.end();
    if (!answerable && !opts.emit_negatives) continue;
    QARecord r;
    r.id = MakeRecordId(ad.id, attribute);
    r.context = ad.text;
    r.question = question;
    r.attribute = attribute;
    r.source_ad_id = ad.id;
    r.is_impossible = !answerable;
    if (answerable) {
      auto answers = it->second;
      std::stable_sort(answers.begin(), answers.end(), [](const Answer& a, const Answer& b) {
        return a.answer_start < b.answer_start;
      });
      answers.erase(std::unique(answers.begin(), answers.end()), answers.end());
      r.answers = std::move(answers);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string ConversionReport::ToJson() const {
  nlohmann::ordered_json j = {
      {"n_ads", n_ads},
      {"answerable_records", answerable_records},
      {"impossible_records", impossible_records},
      {"answer_spans", answer_spans},
      {"discarded_annotations", discarded},
  };
  return j.dump(2) + "\n";
}

ConversionResult ConvertCorpus(const std::vector<AdDocument>& ads,
                               const AttributeQuestionMap& qmap,
                               const ConversionOptions& opts) {
  CheckUniqueIds(ads);
  ConversionResult out;
  out.report.n_ads = ads.size();
  for (const AdDocument& ad : ads) {
    for (auto& r : AdToRecords(ad, qmap, opts, &out.discards)) {
      if (r.is_impossible) {
        ++out.report.impossible_records;
      } else {
        ++out.report.answerable_records;
        out.report.answer_spans += r.answers.size();
      }
      out.records.push_back(std::move(r));
    }
  }
  out.report.discarded = out.discards.size();
  return out;
}

DatasetSplit SplitByAd(const std::vector<AdDocument>& ads,
                       const AttributeQuestionMap& qmap, double train_fraction,
                       std::uint64_t seed, const ConversionOptions& opts) {
  const AdPartition parts = PartitionAds(ads, train_fraction, seed);
  DatasetSplit split;
  split.seed = seed;
  split.train = ConvertCorpus(parts.train, qmap, opts).records;
  split.validation = ConvertCorpus(parts.validation, qmap, opts).records;
  return split;
}

std::vector<UnlabeledExample> MakeUnlabeledExamples(
    const std::vector<AdDocument>& ads, const AttributeQuestionMap& qmap) {
  std::vector<UnlabeledExample> out;
  for (const AdDocument& ad : ads) {
    for (const auto& [attribute, question] : qmap.entries()) {
      out.push_back({MakeRecordId(ad.id, attribute), ad.text, question, attribute, ad.id});
    }
  }
  return out;
}

std::vector<UnlabeledExample> StripAnswers(const std::vector<QARecord>& records) {
  std::vector<UnlabeledExample> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({r.id, r.context, r.question, r.attribute, r.source_ad_id});
  }
  return out;
}

void QuestionCandidateSet::Validate() const {
  if (candidates.empty()) {
    throw ValidationError("attribute '" + attribute + "' has no candidate questions");
  }
  if (scores) {
    if (scores->size() != candidates.size()) {
      throw ValidationError("attribute '" + attribute +
                            "': scores and candidates differ in length");
    }
    for (double s : *scores) {
      if (!(s >= 0.0 && s <= 1.0)) {
        throw ValidationError("attribute '" + attribute + "': score outside [0, 1]");
      }
    }
  }
}

std::size_t ArgmaxScore(const std::vector<double>& scores) {
  if (scores.empty()) throw ValidationError("no scores to choose from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

QuestionSelection SelectBestQuestion(const QuestionCandidateSet& candidates,
                                     const RecordsBuilder& build_records,
                                     const QAModel& frozen_model,
                                     const EvaluateOptions& eval,
                                     double null_threshold) {
  candidates.Validate();
  QuestionSelection sel;
  sel.attribute = candidates.attribute;
  sel.candidates = candidates.candidates;
  if (candidates.scores) {
    sel.scores = *candidates.scores;
  } else {
    for (const auto& question : candidates.candidates) {
      const auto records = build_records(question);
      if (records.empty()) {
        sel.scores.push_back(0.0);
        continue;
      }
      const auto preds = PredictAll(frozen_model, records, null_threshold);
      sel.scores.push_back(Evaluate(preds, records, eval).f1 / 100.0);
    }
  }
  sel.selected = ArgmaxScore(sel.scores);
  return sel;
}

RecordsBuilder AttributeRecordsBuilder(const std::vector<AdDocument>& ads,
                                       const std::string& attribute,
                                       const ConversionOptions& opts) {
  return [&ads, attribute, opts](const std::string& question) {
    AttributeQuestionMap single;
    single.Add(attribute, question);
    ConversionOptions o = opts;
    o.drop_unknown_attributes = true;
    std::vector<QARecord> records;
    for (const auto& ad : ads) {
      for (auto& r : AdToRecords(ad, single, o)) records.push_back(std::move(r));
    }
    return records;
  };
}

QuestionGrid BuildQuestionGrid(const std::vector<std::string>& attributes,
                               const std::vector<QuestionCandidateSet>& candidate_sets,
                               const std::vector<AdDocument>& train_ads,
                               const QAModel& frozen_model,
                               const ConversionOptions& opts,
                               const EvaluateOptions& eval) {
  QuestionGrid grid;
  grid.map.set_language(eval.language);
  for (const auto& attribute : attributes) {
    auto it = std::find_if(candidate_sets.begin(), candidate_sets.end(),
                           [&](const auto& c) { return c.attribute == attribute; });
    if (it == candidate_sets.end()) {
      throw ValidationError("no candidate questions for attribute '" + attribute + "'");
    }
    auto sel = SelectBestQuestion(*it, AttributeRecordsBuilder(train_ads, attribute, opts),
                                  frozen_model, eval);
    grid.map.Add(attribute, sel.question());
    grid.selections.push_back(std::move(sel));
  }
  return grid;
}

std::string SelectionProvenanceTsv(const std::vector<QuestionSelection>& selections) {
  std::ostringstream out;
  out << "attribute\tcandidate\tf1\tselected\n";
  out.precision(6);
  out << std::fixed;
  for (const auto& s : selections) {
    for (std::size_t i = 0; i < s.candidates.size(); ++i) {
      out << s.attribute << '\t' << s.candidates[i] << '\t' << s.scores[i] << '\t'
          << (i == s.selected ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

}  // namespace eventqa
