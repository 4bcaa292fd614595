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

#include "config.h"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "eventqa/errors.h"

namespace eventqa::cli {
namespace {

using nlohmann::json;

void CheckKeys(const json& obj, const std::string& section,
               const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ValidationError(section + ": expected object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ValidationError("unknown config key '" +
                            (section.empty() ? key : section + "." + key) + "'");
    }
  }
}

template <typename T>
void Read(const json& obj, const char* key, const std::string& section, T& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError("config key '" + section + "." + key + "' has the wrong type");
  }
}

template <typename T>
void ReadOptional(const json& obj, const char* key, const std::string& section,
                  std::optional<T>& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  T value{};
  Read(obj, key, section, value);
  out = value;
}

}  // namespace

PipelineConfig ParseConfig(const json& doc) {
  PipelineConfig c;
  if (doc.is_null()) return c;
  CheckKeys(doc, "", {"paths", "regime", "train", "split", "backends", "flags"});

  if (doc.contains("paths")) {
    const json& p = doc["paths"];
    CheckKeys(p, "paths",
              {"corpus", "question_map", "target_question_map", "train", "eval",
               "unlabeled", "unlabeled_text", "input", "output", "cache_dir",
               "run_dir", "perplexity_corpus", "annotator_a", "annotator_b",
               "report_file"});
    Read(p, "corpus", "paths", c.paths.corpus);
    Read(p, "question_map", "paths", c.paths.question_map);
    Read(p, "target_question_map", "paths", c.paths.target_question_map);
    Read(p, "train", "paths", c.paths.train);
    Read(p, "eval", "paths", c.paths.eval);
    Read(p, "unlabeled", "paths", c.paths.unlabeled);
    Read(p, "unlabeled_text", "paths", c.paths.unlabeled_text);
    Read(p, "input", "paths", c.paths.input);
    Read(p, "output", "paths", c.paths.output);
    Read(p, "cache_dir", "paths", c.paths.cache_dir);
    Read(p, "run_dir", "paths", c.paths.run_dir);
    Read(p, "perplexity_corpus", "paths", c.paths.perplexity_corpus);
    Read(p, "annotator_a", "paths", c.paths.annotator_a);
    Read(p, "annotator_b", "paths", c.paths.annotator_b);
    Read(p, "report_file", "paths", c.paths.report_file);
  }

  if (doc.contains("regime")) {
    const json& r = doc["regime"];
    CheckKeys(r, "regime", {"kind", "budget", "source_lang", "target_lang",
                            "unlabeled_corpus_ref", "rounds", "attribute", "mapping"});
    std::string kind = "zero_shot", src = "en", tgt = "en", mapping = "exact";
    Read(r, "kind", "regime", kind);
    Read(r, "source_lang", "regime", src);
    Read(r, "target_lang", "regime", tgt);
    Read(r, "mapping", "regime", mapping);
    c.regime.kind = ParseRegimeKind(kind);
    c.regime.source_lang = ParseLanguage(src);
    c.regime.target_lang = ParseLanguage(tgt);
    c.regime.mapping = ParseMappingMode(mapping);
    ReadOptional(r, "budget", "regime", c.regime.budget);
    ReadOptional(r, "unlabeled_corpus_ref", "regime", c.regime.unlabeled_corpus_ref);
    ReadOptional(r, "rounds", "regime", c.regime.rounds);
    ReadOptional(r, "attribute", "regime", c.regime.attribute);
  }

  if (doc.contains("train")) {
    const json& t = doc["train"];
    CheckKeys(t, "train", {"epochs", "learning_rate", "batch_size", "joint_qa_batch_size",
                           "joint_mlm_batch_size", "weight_decay",
                           "max_sequence_length", "seed"});
    Read(t, "epochs", "train", c.train.epochs);
    Read(t, "learning_rate", "train", c.train.learning_rate);
    Read(t, "batch_size", "train", c.train.batch_size);
    Read(t, "joint_qa_batch_size", "train", c.train.joint_qa_batch_size);
    Read(t, "joint_mlm_batch_size", "train", c.train.joint_mlm_batch_size);
    Read(t, "weight_decay", "train", c.train.weight_decay);
    Read(t, "max_sequence_length", "train", c.train.max_sequence_length);
    Read(t, "seed", "train", c.train.seed);
    c.train.Validate();
  }

  if (doc.contains("split")) {
    const json& s = doc["split"];
    CheckKeys(s, "split", {"train_fraction", "seed"});
    c.split.enabled = true;
    Read(s, "train_fraction", "split", c.split.train_fraction);
    Read(s, "seed", "split", c.split.seed);
    if (!(c.split.train_fraction > 0.0 && c.split.train_fraction < 1.0)) {
      throw ValidationError("split.train_fraction must lie in (0, 1)");
    }
  }

  if (doc.contains("backends")) {
    const json& b = doc["backends"];
    CheckKeys(b, "backends", {"qa", "prompt", "translator", "scorers"});
    Read(b, "qa", "backends", c.backends.qa);
    Read(b, "prompt", "backends", c.backends.prompt);
    Read(b, "translator", "backends", c.backends.translator);
    Read(b, "scorers", "backends", c.backends.scorers);
  }

  if (doc.contains("flags")) {
    const json& f = doc["flags"];
    CheckKeys(f, "flags", {"emit_negatives", "drop_unknown_attributes", "null_threshold",
                           "alignment_threshold", "mask_granularity", "adopt_no_answer",
                           "corpus_language", "bucket_edges"});
    Read(f, "emit_negatives", "flags", c.flags.emit_negatives);
    Read(f, "drop_unknown_attributes", "flags", c.flags.drop_unknown_attributes);
    Read(f, "null_threshold", "flags", c.flags.null_threshold);
    Read(f, "alignment_threshold", "flags", c.flags.alignment_threshold);
    Read(f, "adopt_no_answer", "flags", c.flags.adopt_no_answer);
    std::string granularity = "subtoken", lang = "en";
    Read(f, "mask_granularity", "flags", granularity);
    if (granularity == "subtoken") {
      c.flags.mask_granularity = MaskGranularity::kSubToken;
    } else if (granularity == "word") {
      c.flags.mask_granularity = MaskGranularity::kWord;
    } else {
      throw ValidationError("flags.mask_granularity must be 'subtoken' or 'word'");
    }
    Read(f, "corpus_language", "flags", lang);
    c.flags.corpus_language = ParseLanguage(lang);
    ReadOptional(f, "bucket_edges", "flags", c.flags.bucket_edges);
    if (!(c.flags.alignment_threshold >= 0.0 && c.flags.alignment_threshold <= 1.0)) {
      throw ValidationError("flags.alignment_threshold must lie in [0, 1]");
    }
  }
  return c;
}

void ApplyOverride(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ValidationError("override must look like section.key=value: " + assignment);
  }
  const std::string section = assignment.substr(0, dot);
  const std::string key = assignment.substr(dot + 1, eq - dot - 1);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  if (doc.is_null()) doc = json::object();
  doc[section][key] = std::move(value);
}

json LoadConfigDocument(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
}

std::filesystem::path EffectiveCacheDir(const PipelineConfig& config) {
  if (const char* env = std::getenv("EVENTQA_CACHE_DIR"); env && *env) return env;
  return config.paths.cache_dir;
}

}  // namespace eventqa::cli
