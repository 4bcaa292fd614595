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

#ifndef EVENTQA_TYPES_H_
#define EVENTQA_TYPES_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eventqa {

enum class Language { kEnglish, kFrench, kDutch };

std::string_view LanguageCode(Language lang);
// Accepts "en", "fr", "nl". Throws ValidationError otherwise.
Language ParseLanguage(std::string_view code);

// One annotated attribute span inside an advert. `char_start` is a code point
// offset into the owning ad's text.
struct AttributeAnnotation {
  std::string attribute;
  std::string span_text;
  std::size_t char_start = 0;

  bool operator==(const AttributeAnnotation&) const = default;
};

// A transcribed advert describing a single event, plus its annotations.
struct AdDocument {
  std::string id;
  std::string text;
  Language language = Language::kEnglish;
  std::vector<AttributeAnnotation> annotations;
  std::map<std::string, std::string> metadata;

  bool operator==(const AdDocument&) const = default;
};

// Ordered attribute -> question mapping. Order is significant: it drives
// record emission order and tie-breaking.
class AttributeQuestionMap {
 public:
  AttributeQuestionMap() = default;
  explicit AttributeQuestionMap(Language lang) : language_(lang) {}

  // Throws ValidationError on an empty attribute/question or a duplicate id.
  void Add(std::string attribute, std::string question);

  bool Contains(std::string_view attribute) const;
  // Throws ValidationError if the attribute is unknown.
  const std::string& Question(std::string_view attribute) const;
  std::optional<std::size_t> IndexOf(std::string_view attribute) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  std::vector<std::string> attributes() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Language language() const { return language_; }
  void set_language(Language lang) { language_ = lang; }

  bool operator==(const AttributeQuestionMap&) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  Language language_ = Language::kEnglish;
};

struct Answer {
  std::string text;
  std::size_t answer_start = 0;  // code point offset into the context

  bool operator==(const Answer&) const = default;
};

// One extractive QA instance with SQuAD-v2 semantics.
struct QARecord {
  std::string id;
  std::string context;
  std::string question;
  std::vector<Answer> answers;
  bool is_impossible = false;
  std::string attribute;
  std::string source_ad_id;

  bool operator==(const QARecord&) const = default;
};

struct DatasetSplit {
  std::vector<QARecord> train;
  std::vector<QARecord> validation;
  std::uint64_t seed = 0;
};

// Record id convention: "<ad_id>::<attribute>".
std::string MakeRecordId(std::string_view ad_id, std::string_view attribute);

// True iff `span` occurs verbatim in `text` at code point offset `start`.
bool SpanMatchesAt(std::string_view text, std::string_view span,
                   std::size_t start);

// Empty when the record satisfies every invariant; otherwise one message per
// violation.
std::vector<std::string> RecordViolations(const QARecord& record);

// Throws IntegrityError listing the ids of all invalid records.
void ValidateRecords(const std::vector<QARecord>& records);

}  // namespace eventqa

#endif  // EVENTQA_TYPES_H_
