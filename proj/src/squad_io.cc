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

#include "eventqa/squad_io.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eventqa/errors.h"
#include "eventqa/hashing.h"

namespace eventqa {
namespace {

using nlohmann::json;

const json& Member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw FormatError(path + ": expected object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError(path + "." + key + ": missing");
  }
  return *it;
}

std::string StringMember(const json& obj, const char* key,
                         const std::string& path) {
  const json& v = Member(obj, key, path);
  if (!v.is_string()) throw FormatError(path + "." + key + ": expected string");
  return v.get<std::string>();
}

const json& ArrayMember(const json& obj, const char* key,
                        const std::string& path) {
  const json& v = Member(obj, key, path);
  if (!v.is_array()) throw FormatError(path + "." + key + ": expected array");
  return v;
}

std::string Index(const std::string& path, const char* key, std::size_t i) {
  return path + "." + key + "[" + std::to_string(i) + "]";
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<QARecord> ParseSquad(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  const std::string root = "$";
  const json& data = ArrayMember(doc, "data", root);

  std::vector<QARecord> records;
  for (std::size_t di = 0; di < data.size(); ++di) {
    const std::string dpath = Index(root, "data", di);
    const json& entry = data[di];
    std::string title;
    if (entry.is_object() && entry.contains("title")) {
      title = StringMember(entry, "title", dpath);
    }
    const json& paragraphs = ArrayMember(entry, "paragraphs", dpath);
    for (std::size_t pi = 0; pi < paragraphs.size(); ++pi) {
      const std::string ppath = Index(dpath, "paragraphs", pi);
      const std::string context = StringMember(paragraphs[pi], "context", ppath);
      const json& qas = ArrayMember(paragraphs[pi], "qas", ppath);
      for (std::size_t qi = 0; qi < qas.size(); ++qi) {
        const std::string qpath = Index(ppath, "qas", qi);
        const json& qa = qas[qi];
        QARecord r;
        r.context = context;
        r.id = StringMember(qa, "id", qpath);
        r.question = StringMember(qa, "question", qpath);
        const json& answers = ArrayMember(qa, "answers", qpath);
        for (std::size_t ai = 0; ai < answers.size(); ++ai) {
          const std::string apath = Index(qpath, "answers", ai);
          Answer a;
          a.text = StringMember(answers[ai], "text", apath);
          const json& start = Member(answers[ai], "answer_start", apath);
          if (!start.is_number_integer() || start.get<long long>() < 0) {
            throw FormatError(apath +
                              ".answer_start: expected non-negative integer");
          }
          a.answer_start = start.get<std::size_t>();
          r.answers.push_back(std::move(a));
        }
        if (qa.contains("is_impossible")) {
          const json& imp = qa["is_impossible"];
          if (!imp.is_boolean()) {
            throw FormatError(qpath + ".is_impossible: expected bool");
          }
          r.is_impossible = imp.get<bool>();
        } else {
          r.is_impossible = r.answers.empty();
        }
        r.source_ad_id = title;
        const std::string prefix = title + "::";
        if (!title.empty() && r.id.size() > prefix.size() &&
            r.id.compare(0, prefix.size(), prefix) == 0) {
          r.attribute = r.id.substr(prefix.size());
        }
        records.push_back(std::move(r));
      }
    }
  }
  ValidateRecords(records);
  return records;
}

std::vector<QARecord> LoadSquadFile(const std::filesystem::path& path) {
  return ParseSquad(ReadFile(path));
}

std::string SerializeSquad(const std::vector<QARecord>& records) {
  ValidateRecords(records);
  json data = json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const QARecord& r = records[i];
    const bool new_entry = i == 0 || records[i - 1].source_ad_id != r.source_ad_id;
    if (new_entry) {
      data.push_back({{"title", r.source_ad_id}, {"paragraphs", json::array()}});
    }
    json& paragraphs = data.back()["paragraphs"];
    if (new_entry || records[i - 1].context != r.context) {
      paragraphs.push_back({{"context", r.context}, {"qas", json::array()}});
    }
    json answers = json::array();
    for (const Answer& a : r.answers) {
      answers.push_back({{"text", a.text}, {"answer_start", a.answer_start}});
    }
    paragraphs.back()["qas"].push_back({{"id", r.id},
                                        {"question", r.question},
                                        {"answers", std::move(answers)},
                                        {"is_impossible", r.is_impossible}});
  }
  json doc = {{"version", kSquadVersion}, {"data", std::move(data)}};
  return doc.dump(1) + "\n";
}

void SaveSquadFile(const std::vector<QARecord>& records,
                   const std::filesystem::path& path) {
  const std::string text = SerializeSquad(records);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

std::string DatasetHash(const std::vector<QARecord>& records) {
  Fingerprinter fp;
  for (const QARecord& r : records) {
    fp.AddField(r.id).AddField(r.context).AddField(r.question);
    fp.Add(static_cast<std::uint64_t>(r.answers.size()));
    for (const Answer& a : r.answers) {
      fp.AddField(a.text).Add(static_cast<std::uint64_t>(a.answer_start));
    }
    fp.Add(static_cast<std::uint64_t>(r.is_impossible));
    fp.AddField(r.attribute).AddField(r.source_ad_id);
  }
  return fp.hex();
}

}  // namespace eventqa
