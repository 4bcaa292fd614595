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

#ifndef EVENTQA_CORPUS_H_
#define EVENTQA_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "eventqa/types.h"

namespace eventqa {

// An annotation dropped while loading or converting, with the reason.
struct Discard {
  std::string ad_id;
  std::string attribute;
  std::string span_text;
  std::string reason;
};

struct LoadedCorpus {
  std::vector<AdDocument> ads;
  std::vector<Discard> discards;
};

// Annotated ads, one JSON object per line (blank lines ignored), or a single
// JSON array of the same objects:
//   {"id", "text", "language", "annotations": [{"attribute", "span_text",
//    "char_start"}], "metadata": {...}}
// `char_start` may be omitted, in which case the first verbatim occurrence of
// the span is used. Annotations that are not verbatim substrings of the text
// are discarded and reported, never repaired. Duplicate ad ids throw
// IntegrityError.
LoadedCorpus ParseAds(const std::string& text);
LoadedCorpus LoadAdsFile(const std::filesystem::path& path);
std::string SerializeAds(const std::vector<AdDocument>& ads);  // JSONL
void SaveAdsFile(const std::vector<AdDocument>& ads,
                 const std::filesystem::path& path);

// UTF-8 TSV, one "attribute<TAB>question" row per line. Lines starting with
// '#' and blank lines are skipped.
AttributeQuestionMap ParseQuestionMap(const std::string& tsv, Language lang);
AttributeQuestionMap LoadQuestionMapFile(const std::filesystem::path& path,
                                         Language lang);
std::string SerializeQuestionMap(const AttributeQuestionMap& qmap);

// The 35 attribute/question pairs of the English runaway-adverts corpus.
const AttributeQuestionMap& RunawaysQuestionMap();
// Number of annotated occurrences per attribute in that corpus, in map order.
const std::vector<std::pair<std::string, std::size_t>>&
RunawaysAnnotationCounts();

struct AdPartition {
  std::vector<AdDocument> train;
  std::vector<AdDocument> validation;
};

// Partitions ads into train/validation. Each ad is ranked by a seeded hash of
// its id and the first round(train_fraction * N) go to train, so assignments
// depend only on (seed, id) and the relative order of ads is stable when new
// ads are added. Both sides keep input order.
// Throws ValidationError on an empty corpus or a fraction outside (0, 1), and
// IntegrityError on duplicate ids.
AdPartition PartitionAds(const std::vector<AdDocument>& ads,
                         double train_fraction, std::uint64_t seed);

// Ids ordered by seeded hash rank (ties broken by id).
std::vector<std::string> RankIds(std::vector<std::string> ids,
                                 std::uint64_t seed);

struct CorpusStats {
  std::size_t n_ads = 0;
  std::size_t n_annotations = 0;
  std::map<std::string, std::size_t> per_attribute_counts;
  std::map<std::string, std::size_t> per_language_counts;  // ads per language
};

CorpusStats ComputeCorpusStats(const std::vector<AdDocument>& ads);

// Throws IntegrityError naming the first duplicated id.
void CheckUniqueIds(const std::vector<AdDocument>& ads);

}  // namespace eventqa

#endif  // EVENTQA_CORPUS_H_
