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

#include "eventqa/alignment.h"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

#include "eventqa/errors.h"
#include "eventqa/utf8.h"

namespace eventqa {
namespace {

std::u32string Fold(std::u32string_view text) {
  return utf8::FoldAndCollapse(utf8::Encode(text));
}

double Ratio(std::u32string_view a, std::u32string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(EditDistance(a, b)) / static_cast<double>(longest);
}

std::optional<SpanMatch> VerbatimMatch(const std::string& context,
                                       const std::string& query) {
  if (query.empty()) return std::nullopt;
  const std::size_t pos = utf8::Find(context, query);
  if (pos == utf8::npos) return std::nullopt;
  return SpanMatch{query, pos, 1.0, 0};
}

}  // namespace

std::size_t EditDistance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double Similarity(const std::string& s1, const std::string& s2) {
  return Ratio(utf8::FoldAndCollapse(s1), utf8::FoldAndCollapse(s2));
}

std::optional<SpanMatch> KgramBestMatch(const std::string& context,
                                        const std::string& query,
                                        std::size_t k, double threshold) {
  if (k == 0) throw ValidationError("k-gram size must be at least 1");
  const std::u32string text = utf8::Decode(context);
  const auto words = utf8::SplitWords(text);
  if (words.size() < k) return std::nullopt;
  const std::u32string folded_query = utf8::FoldAndCollapse(query);

  std::optional<SpanMatch> best;
  for (std::size_t i = 0; i + k <= words.size(); ++i) {
    const std::size_t start = words[i].start;
    const std::size_t end = words[i + k - 1].end;
    const std::u32string_view window = std::u32string_view(text).substr(start, end - start);
    const double score = Ratio(Fold(window), folded_query);
    if (score < threshold) continue;
    if (!best || score > best->score) {
      best = SpanMatch{utf8::Encode(window), start, score, k};
    }
  }
  return best;
}

std::optional<SpanMatch> SweepKgrams(const std::string& context,
                                     const std::string& query, std::size_t k0,
                                     double threshold, std::size_t sweep) {
  std::optional<SpanMatch> best;
  for (std::size_t k = k0; k < k0 + sweep; ++k) {
    auto m = KgramBestMatch(context, query, k, threshold);
    if (m && (!best || m->score > best->score)) best = std::move(m);
  }
  return best;
}

AlignmentProblem AlignmentProblem::Make(std::string source_answer,
                                        std::string translated_context,
                                        std::string translated_answer) {
  AlignmentProblem p;
  p.k0 = std::max<std::size_t>(
      {utf8::CountWords(translated_answer), utf8::CountWords(source_answer), 1});
  p.source_answer = std::move(source_answer);
  p.translated_context = std::move(translated_context);
  p.translated_answer = std::move(translated_answer);
  return p;
}

std::optional<SpanMatch> ProjectAnswer(AlignmentProblem& problem,
                                       double threshold) {
  if (problem.k0 == 0) throw ValidationError("k0 must be at least 1");
  problem.result.reset();
  problem.source = ProjectionSource::kNone;
  const std::pair<const std::string*, ProjectionSource> queries[] = {
      {&problem.translated_answer, ProjectionSource::kTranslatedAnswer},
      {&problem.source_answer, ProjectionSource::kSourceAnswer},
  };
  for (const auto& [query, source] : queries) {
    auto match = VerbatimMatch(problem.translated_context, *query);
    if (!match) {
      match = SweepKgrams(problem.translated_context, *query, problem.k0, threshold);
    }
    if (match) {
      problem.result = std::move(match);
      problem.source = source;
      break;
    }
  }
  return problem.result;
}

AlignmentReport& AlignmentReport::operator+=(const AlignmentReport& o) {
  total += o.total;
  impossible += o.impossible;
  projected_translated += o.projected_translated;
  projected_fallback += o.projected_fallback;
  dropped_answers += o.dropped_answers;
  discarded += o.discarded;
  kept += o.kept;
  return *this;
}

std::string AlignmentReport::ToJson() const {
  nlohmann::ordered_json j = {
      {"total", total},
      {"kept", kept},
      {"impossible", impossible},
      {"projected_via_translated_answer", projected_translated},
      {"projected_via_source_answer", projected_fallback},
      {"dropped_answers", dropped_answers},
      {"discarded", discarded},
  };
  return j.dump(2) + "\n";
}

std::optional<QARecord> AlignRecord(const QARecord& record,
                                    const std::string& target_question,
                                    Translator& translator,
                                    const AlignOptions& opts,
                                    AlignmentReport* report) {
  AlignmentReport local;
  ++local.total;
  QARecord out;
  out.id = record.id;
  out.question = target_question;
  out.attribute = record.attribute;
  out.source_ad_id = record.source_ad_id;
  out.is_impossible = record.is_impossible;
  out.context = translator.Translate(record.context, opts.source_lang, opts.target_lang);

  std::optional<QARecord> result;
  if (record.is_impossible) {
    ++local.impossible;
    ++local.kept;
    result = std::move(out);
  } else {
    for (const Answer& a : record.answers) {
      const std::string translated =
          translator.Translate(a.text, opts.source_lang, opts.target_lang);
      auto problem = AlignmentProblem::Make(a.text, out.context, translated);
      auto match = ProjectAnswer(problem, opts.threshold);
      if (!match) {
        ++local.dropped_answers;
        continue;
      }
      if (problem.source == ProjectionSource::kTranslatedAnswer) {
        ++local.projected_translated;
      } else {
        ++local.projected_fallback;
      }
      Answer projected{match->span_text, match->char_start};
      if (std::find(out.answers.begin(), out.answers.end(), projected) ==
          out.answers.end()) {
        out.answers.push_back(std::move(projected));
      }
    }
    if (out.answers.empty()) {
      ++local.discarded;
    } else {
      ++local.kept;
      result = std::move(out);
    }
  }
  if (report) *report += local;
  return result;
}

std::vector<QARecord> AlignRecords(const std::vector<QARecord>& records,
                                   const AttributeQuestionMap& target_questions,
                                   Translator& translator,
                                   const AlignOptions& opts,
                                   AlignmentReport& report) {
  std::vector<QARecord> out;
  out.reserve(records.size());
  for (const QARecord& r : records) {
    auto aligned = AlignRecord(r, target_questions.Question(r.attribute),
                               translator, opts, &report);
    if (aligned) out.push_back(std::move(*aligned));
  }
  return out;
}

}  // namespace eventqa
