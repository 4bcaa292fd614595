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

#include "eventqa/types.h"

#include <algorithm>

#include "eventqa/errors.h"
#include "eventqa/utf8.h"

namespace eventqa {

std::string_view LanguageCode(Language lang) {
  switch (lang) {
    case Language::kEnglish:
      return "en";
    case Language::kFrench:
      return "fr";
    case Language::kDutch:
      return "nl";
  }
  return "en";
}

Language ParseLanguage(std::string_view code) {
  if (code == "en") return Language::kEnglish;
  if (code == "fr") return Language::kFrench;
  if (code == "nl") return Language::kDutch;
  throw ValidationError("unknown language code '" + std::string(code) +
                        "' (expected en, fr or nl)");
}

void AttributeQuestionMap::Add(std::string attribute, std::string question) {
  if (attribute.empty()) throw ValidationError("empty attribute id");
  if (question.empty()) {
    throw ValidationError("empty question for attribute '" + attribute + "'");
  }
  if (Contains(attribute)) {
    throw ValidationError("duplicate attribute '" + attribute + "'");
  }
  entries_.emplace_back(std::move(attribute), std::move(question));
}

std::optional<std::size_t> AttributeQuestionMap::IndexOf(
    std::string_view attribute) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].first == attribute) return i;
  }
  return std::nullopt;
}

bool AttributeQuestionMap::Contains(std::string_view attribute) const {
  return IndexOf(attribute).has_value();
}

const std::string& AttributeQuestionMap::Question(
    std::string_view attribute) const {
  auto idx = IndexOf(attribute);
  if (!idx) {
    throw ValidationError("attribute '" + std::string(attribute) +
                          "' is not in the question map");
  }
  return entries_[*idx].second;
}

std::vector<std::string> AttributeQuestionMap::attributes() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [attr, q] : entries_) out.push_back(attr);
  return out;
}

std::string MakeRecordId(std::string_view ad_id, std::string_view attribute) {
  std::string id(ad_id);
  id += "::";
  id += attribute;
  return id;
}

bool SpanMatchesAt(std::string_view text, std::string_view span,
                   std::size_t start) {
  const std::u32string t = utf8::Decode(text);
  const std::u32string s = utf8::Decode(span);
  if (start > t.size() || s.size() > t.size() - start) return false;
  return std::u32string_view(t).substr(start, s.size()) == s;
}

std::vector<std::string> RecordViolations(const QARecord& record) {
  std::vector<std::string> out;
  if (record.id.empty()) out.emplace_back("empty id");
  if (record.is_impossible != record.answers.empty()) {
    out.emplace_back(record.is_impossible
                         ? "impossible record carries answers"
                         : "answerable record has no answers");
  }
  for (const Answer& a : record.answers) {
    if (!SpanMatchesAt(record.context, a.text, a.answer_start)) {
      out.push_back("answer '" + a.text + "' not found at offset " +
                    std::to_string(a.answer_start));
    }
  }
  return out;
}

void ValidateRecords(const std::vector<QARecord>& records) {
  std::vector<std::string> bad;
  for (const QARecord& r : records) {
    if (!RecordViolations(r).empty()) bad.push_back(r.id);
  }
  if (bad.empty()) return;
  std::string msg = "invalid records (" + std::to_string(bad.size()) + "):";
  for (const auto& id : bad) msg += " " + id;
  throw IntegrityError(msg);
}

}  // namespace eventqa
