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

#ifndef EVENTQA_SQUAD_IO_H_
#define EVENTQA_SQUAD_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "eventqa/types.h"

// SQuAD-v2 JSON reading and writing.
//
// Layout: {"version", "data": [{"title", "paragraphs": [{"context", "qas":
// [{"id", "question", "answers": [{"text", "answer_start"}],
// "is_impossible"}]}]}]}. No other keys are written. `answer_start` is a
// Unicode code point offset into `context`.
//
// The schema has no slot for the attribute or the source ad, so they travel
// in existing fields: each data entry's title is the source ad id, and record
// ids follow "<ad_id>::<attribute>". Consecutive records of the same ad share
// a data entry, consecutive records with the same context share a paragraph;
// record order therefore survives a round trip.
namespace eventqa {

inline constexpr char kSquadVersion[] = "v2.0";

// Throws FormatError naming the offending path element, or IntegrityError
// listing the ids of records whose answers do not match their offsets.
std::vector<QARecord> ParseSquad(const std::string& json_text);
std::vector<QARecord> LoadSquadFile(const std::filesystem::path& path);

// Throws IntegrityError (and writes nothing) if any record is invalid.
std::string SerializeSquad(const std::vector<QARecord>& records);
void SaveSquadFile(const std::vector<QARecord>& records,
                   const std::filesystem::path& path);

// Order-sensitive content hash of a record list, for run provenance.
std::string DatasetHash(const std::vector<QARecord>& records);

}  // namespace eventqa

#endif  // EVENTQA_SQUAD_IO_H_
