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

#include "eventqa/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "eventqa/errors.h"
#include "eventqa/hashing.h"
#include "eventqa/utf8.h"

namespace eventqa {
namespace {

using nlohmann::json;

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

std::string RequireString(const json& obj, const char* key,
                          const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw FormatError(where + "." + key + ": expected string");
  }
  return it->get<std::string>();
}

AdDocument ParseAd(const json& obj, const std::string& where,
                   std::vector<Discard>& discards) {
  if (!obj.is_object()) throw FormatError(where + ": expected object");
  AdDocument ad;
  ad.id = RequireString(obj, "id", where);
  if (ad.id.empty()) throw FormatError(where + ".id: empty");
  ad.text = RequireString(obj, "text", where);
  if (obj.contains("language")) {
    ad.language = ParseLanguage(RequireString(obj, "language", where));
  }
  if (obj.contains("metadata")) {
    const json& meta = obj["metadata"];
    if (!meta.is_object()) throw FormatError(where + ".metadata: expected object");
    for (const auto& [k, v] : meta.items()) {
      ad.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  if (obj.contains("annotations")) {
    const json& anns = obj["annotations"];
    if (!anns.is_array()) {
      throw FormatError(where + ".annotations: expected array");
    }
    for (std::size_t i = 0; i < anns.size(); ++i) {
      const std::string apath = where + ".annotations[" + std::to_string(i) + "]";
      AttributeAnnotation ann;
      ann.attribute = RequireString(anns[i], "attribute", apath);
      ann.span_text = RequireString(anns[i], "span_text", apath);
      bool ok = !ann.span_text.empty();
      std::string reason = "empty span";
      if (ok && anns[i].contains("char_start") && !anns[i]["char_start"].is_null()) {
        const json& s = anns[i]["char_start"];
        if (!s.is_number_integer() || s.get<long long>() < 0) {
          throw FormatError(apath + ".char_start: expected non-negative integer");
        }
        ann.char_start = s.get<std::size_t>();
        ok = SpanMatchesAt(ad.text, ann.span_text, ann.char_start);
        reason = "span not verbatim at char_start " + std::to_string(ann.char_start);
      } else if (ok) {
        const std::size_t pos = utf8::Find(ad.text, ann.span_text);
        ok = pos != utf8::npos;
        ann.char_start = ok ? pos : 0;
        reason = "span not found in text";
      }
      if (ok) {
        ad.annotations.push_back(std::move(ann));
      } else {
        discards.push_back({ad.id, ann.attribute, ann.span_text, reason});
      }
    }
  }
  return ad;
}

}  // namespace

LoadedCorpus ParseAds(const std::string& text) {
  LoadedCorpus out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    for (std::size_t i = 0; i < doc.size(); ++i) {
      out.ads.push_back(ParseAd(doc[i], "$[" + std::to_string(i) + "]", out.discards));
    }
  } else {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json obj;
      try {
        obj = json::parse(line);
      } catch (const json::parse_error& e) {
        throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
      }
      out.ads.push_back(
          ParseAd(obj, "line " + std::to_string(lineno), out.discards));
    }
  }
  CheckUniqueIds(out.ads);
  return out;
}

LoadedCorpus LoadAdsFile(const std::filesystem::path& path) {
  return ParseAds(ReadFile(path));
}

std::string SerializeAds(const std::vector<AdDocument>& ads) {
  std::string out;
  for (const AdDocument& ad : ads) {
    json anns = json::array();
    for (const auto& a : ad.annotations) {
      anns.push_back({{"attribute", a.attribute},
                      {"span_text", a.span_text},
                      {"char_start", a.char_start}});
    }
    json obj = {{"id", ad.id},
                {"text", ad.text},
                {"language", std::string(LanguageCode(ad.language))},
                {"annotations", std::move(anns)},
                {"metadata", ad.metadata}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void SaveAdsFile(const std::vector<AdDocument>& ads,
                 const std::filesystem::path& path) {
  WriteFile(path, SerializeAds(ads));
}

AttributeQuestionMap ParseQuestionMap(const std::string& tsv, Language lang) {
  AttributeQuestionMap qmap(lang);
  std::istringstream in(tsv);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError("question map line " + std::to_string(lineno) +
                        ": expected exactly one tab");
    }
    try {
      qmap.Add(line.substr(0, tab), line.substr(tab + 1));
    } catch (const ValidationError& e) {
      throw FormatError("question map line " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  return qmap;
}

AttributeQuestionMap LoadQuestionMapFile(const std::filesystem::path& path,
                                         Language lang) {
  return ParseQuestionMap(ReadFile(path), lang);
}

std::string SerializeQuestionMap(const AttributeQuestionMap& qmap) {
  std::string out;
  for (const auto& [attr, q] : qmap.entries()) {
    out += attr + "\t" + q + "\n";
  }
  return out;
}

namespace {

struct AttributeRow {
  const char* id;
  const char* question;
  std::size_t annotated;
};

constexpr AttributeRow kRunawaysAttributes[] = {
    {"accused_of_crime", "What crimes did the person commit?", 107},
    {"also_known_as", "What other aliases does the person have?", 103},
    {"clothing", "What clothes did the person wear?", 656},
    {"companions", "What are the names of the person's friends?", 49},
    {"contact_address", "Where does the contact person of the ad live?", 740},
    {"contact_occupation", "What does the contact of the ad do for a living?", 278},
    {"country_marks", "What country marks does the person have?", 63},
    {"destination_region", "What is the destination region of the person?", 15},
    {"destination_specified", "What is the name of the destination?", 118},
    {"disease", "What kind of diseases does the person have?", 91},
    {"given_name", "What is the given name of the person?", 693},
    {"given_surname", "What is the last name of the person?", 196},
    {"injuries", "How was the person injured?", 63},
    {"language", "What are the communication skills of the person?", 319},
    {"literacy", "What is the literacy level of the person?", 8},
    {"motivation", "Why did the person escape his owner?", 4},
    {"name_of_contact", "Who is the contact person for the ad?", 678},
    {"origin", "Where does the person originate from?", 28},
    {"other_reward", "What other rewards were offered?", 382},
    {"owner", "Who is the owner of the person?", 395},
    {"owner_address", "Where does the owner of the person live?", 270},
    {"owner_occupation", "What does the owner of the person do for a living?", 78},
    {"personality", "What are the personality traits of the person?", 15},
    {"physical_characteristics", "What are the physical characteristics of the person?", 568},
    {"physical_scars", "What scars does the person have?", 131},
    {"plantation_marks", "What plantation marks does the person have?", 23},
    {"racial_descriptor", "What is the ethnicity of the person?", 807},
    {"ran_from_region", "What is the name of the region the person escaped from?", 3},
    {"ran_from_specified", "What is the name of the place the person escaped from?", 406},
    {"religion", "What is the religion of the person?", 13},
    {"runaway_date", "What was the date of the event?", 15},
    {"skills", "What is the set of skills of the person?", 55},
    {"specified_occupation", "What does the person do for a living?", 98},
    {"stutters", "Does the person stutter?", 22},
    {"total_reward", "How much reward is offered?", 780},
};

}  // namespace

const AttributeQuestionMap& RunawaysQuestionMap() {
  static const AttributeQuestionMap kMap = [] {
    AttributeQuestionMap m(Language::kEnglish);
    for (const auto& row : kRunawaysAttributes) m.Add(row.id, row.question);
    return m;
  }();
  return kMap;
}

const std::vector<std::pair<std::string, std::size_t>>&
RunawaysAnnotationCounts() {
  static const std::vector<std::pair<std::string, std::size_t>> kCounts = [] {
    std::vector<std::pair<std::string, std::size_t>> v;
    for (const auto& row : kRunawaysAttributes) v.emplace_back(row.id, row.annotated);
    return v;
  }();
  return kCounts;
}

void CheckUniqueIds(const std::vector<AdDocument>& ads) {
  std::unordered_set<std::string> seen;
  for (const AdDocument& ad : ads) {
    if (ad.id.empty()) throw IntegrityError("ad with empty id");
    if (!seen.insert(ad.id).second) {
      throw IntegrityError("duplicate ad id '" + ad.id + "'");
    }
  }
}

std::vector<std::string> RankIds(std::vector<std::string> ids,
                                 std::uint64_t seed) {
  std::vector<std::pair<std::uint64_t, std::string>> keyed;
  keyed.reserve(ids.size());
  for (auto& id : ids) {
    const std::uint64_t key = SeededKey(seed, id);
    keyed.emplace_back(key, std::move(id));
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  out.reserve(keyed.size());
  for (auto& [key, id] : keyed) out.push_back(std::move(id));
  return out;
}

AdPartition PartitionAds(const std::vector<AdDocument>& ads,
                         double train_fraction, std::uint64_t seed) {
  if (ads.empty()) throw ValidationError("cannot split an empty corpus");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ValidationError("train_fraction must lie in (0, 1)");
  }
  CheckUniqueIds(ads);
  std::vector<std::string> ids;
  ids.reserve(ads.size());
  for (const auto& ad : ads) ids.push_back(ad.id);
  const auto ranked = RankIds(std::move(ids), seed);
  // The epsilon keeps exact .5 products (835 * 0.7) from rounding down.
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(ads.size()) + 1e-9));
  const std::set<std::string> train_ids(ranked.begin(), ranked.begin() + n_train);

  AdPartition out;
  for (const AdDocument& ad : ads) {
    (train_ids.count(ad.id) ? out.train : out.validation).push_back(ad);
  }
  return out;
}

CorpusStats ComputeCorpusStats(const std::vector<AdDocument>& ads) {
  CorpusStats stats;
  stats.n_ads = ads.size();
  for (const AdDocument& ad : ads) {
    ++stats.per_language_counts[std::string(LanguageCode(ad.language))];
    for (const auto& ann : ad.annotations) {
      ++stats.per_attribute_counts[ann.attribute];
      ++stats.n_annotations;
    }
  }
  return stats;
}

}  // namespace eventqa
