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

#include "eventqa/perplexity.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eventqa/errors.h"
#include "eventqa/utf8.h"

namespace eventqa {

double MaskedScorer::MaskedSpanNll(std::span<const std::string> tokens,
                                   std::size_t begin, std::size_t end) const {
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) sum += TokenNll(tokens, i);
  return sum;
}

SentenceScore ScoreSentence(const MaskedScorer& scorer,
                            const std::vector<std::string>& words,
                            MaskGranularity granularity) {
  if (words.empty()) throw ValidationError("cannot score an empty sentence");
  std::vector<std::string> tokens;
  std::vector<std::pair<std::size_t, std::size_t>> word_ranges;
  for (const auto& w : words) {
    const std::size_t begin = tokens.size();
    for (auto& t : scorer.Tokenize(w)) tokens.push_back(std::move(t));
    word_ranges.emplace_back(begin, tokens.size());
  }
  if (tokens.empty()) throw ValidationError("sentence tokenized to nothing");

  const std::span<const std::string> view(tokens);
  SentenceScore score;
  score.n_tokens = tokens.size();
  if (granularity == MaskGranularity::kSubToken) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      score.total_nll += scorer.TokenNll(view, i);
    }
  } else {
    for (const auto& [b, e] : word_ranges) {
      if (b < e) score.total_nll += scorer.MaskedSpanNll(view, b, e);
    }
  }
  return score;
}

double SentencePseudoPerplexity(const MaskedScorer& scorer,
                                const std::vector<std::string>& words,
                                MaskGranularity granularity) {
  return std::exp(ScoreSentence(scorer, words, granularity).mean_nll());
}

CorpusPerplexity CorpusPseudoPerplexity(
    const MaskedScorer& scorer,
    const std::vector<std::vector<std::string>>& corpus,
    MaskGranularity granularity) {
  if (corpus.empty()) throw ValidationError("cannot score an empty corpus");
  CorpusPerplexity out;
  double total_nll = 0.0;
  for (const auto& sentence : corpus) {
    SentenceScore s = ScoreSentence(scorer, sentence, granularity);
    total_nll += s.total_nll;
    out.total_tokens += s.n_tokens;
    out.per_sentence.push_back(s);
  }
  out.value = std::exp(total_nll / static_cast<double>(out.total_tokens));
  return out;
}

std::vector<PerplexityRow> CompareModels(
    const std::vector<std::vector<std::string>>& corpus,
    const std::vector<NamedScorer>& scorers, MaskGranularity granularity) {
  if (scorers.empty()) throw ValidationError("no scorers to compare");
  std::vector<PerplexityRow> rows;
  for (const auto& [name, scorer] : scorers) {
    const CorpusPerplexity pp = CorpusPseudoPerplexity(*scorer, corpus, granularity);
    rows.push_back({name, pp.value, pp.total_tokens});
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.pp != b.pp) return a.pp < b.pp;
    return a.model_name < b.model_name;
  });
  return rows;
}

std::string PerplexityTableTsv(const std::vector<PerplexityRow>& rows) {
  std::ostringstream out;
  out << "model_name\tpp\ttotal_tokens\n";
  out.precision(6);
  out << std::fixed;
  for (const auto& r : rows) {
    out << r.model_name << '\t' << r.pp << '\t' << r.total_tokens << '\n';
  }
  return out.str();
}

std::vector<std::vector<std::string>> TokenizeCorpus(const std::string& text) {
  std::vector<std::vector<std::string>> corpus;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::u32string cps = utf8::Decode(line);
    std::vector<std::string> words;
    for (const auto& w : utf8::SplitWords(cps)) {
      words.push_back(utf8::Encode(std::u32string_view(cps).substr(w.start, w.end - w.start)));
    }
    if (!words.empty()) corpus.push_back(std::move(words));
  }
  return corpus;
}

UniformScorer::UniformScorer(std::size_t vocab_size) {
  if (vocab_size == 0) throw ValidationError("vocabulary size must be positive");
  nll_ = std::log(static_cast<double>(vocab_size));
}

double UniformScorer::TokenNll(std::span<const std::string>, std::size_t) const {
  return nll_;
}

UnigramScorer::UnigramScorer(
    const std::vector<std::vector<std::string>>& training) {
  for (const auto& sentence : training) {
    for (const auto& w : sentence) {
      ++counts_[w];
      ++total_;
    }
  }
}

double UnigramScorer::TokenNll(std::span<const std::string> tokens,
                               std::size_t i) const {
  auto it = counts_.find(tokens[i]);
  const double count = it == counts_.end() ? 0.0 : static_cast<double>(it->second);
  const double p = (count + 1.0) / (static_cast<double>(total_) + vocab_size());
  return -std::log(p);
}

}  // namespace eventqa
