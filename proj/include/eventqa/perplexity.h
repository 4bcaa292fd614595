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

#ifndef EVENTQA_PERPLEXITY_H_
#define EVENTQA_PERPLEXITY_H_

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

// Pseudo-perplexity of text under a masked language model.
//
// For a sentence of n model tokens, PP = exp(mean_i NLL(w_i | S masked at
// i)). A corpus is scored token-weighted: log PP = (sum of all masked NLLs) /
// (total token count), so the grouping of tokens into sentences does not
// matter.
namespace eventqa {

class MaskedScorer {
 public:
  virtual ~MaskedScorer() = default;

  // Model tokens for one word. Word-level models return {word}.
  virtual std::vector<std::string> Tokenize(const std::string& word) const {
    return {word};
  }

  // Negative log likelihood (nats) of tokens[i] with position i masked.
  virtual double TokenNll(std::span<const std::string> tokens,
                          std::size_t i) const = 0;

  // NLL of tokens[begin, end) with that whole range masked. The default sums
  // per-position scores.
  virtual double MaskedSpanNll(std::span<const std::string> tokens,
                               std::size_t begin, std::size_t end) const;
};

enum class MaskGranularity {
  kSubToken,  // one mask per model token
  kWord,      // all sub-tokens of a word masked together, NLLs summed
};

struct SentenceScore {
  std::size_t n_tokens = 0;
  double total_nll = 0.0;
  double mean_nll() const { return n_tokens ? total_nll / n_tokens : 0.0; }
};

struct CorpusPerplexity {
  double value = 0.0;
  std::size_t total_tokens = 0;
  std::vector<SentenceScore> per_sentence;
};

// `words` is a pre-tokenized sentence. Throws ValidationError when empty.
SentenceScore ScoreSentence(const MaskedScorer& scorer,
                            const std::vector<std::string>& words,
                            MaskGranularity granularity = MaskGranularity::kSubToken);

double SentencePseudoPerplexity(
    const MaskedScorer& scorer, const std::vector<std::string>& words,
    MaskGranularity granularity = MaskGranularity::kSubToken);

// Throws ValidationError for an empty corpus or an empty sentence.
CorpusPerplexity CorpusPseudoPerplexity(
    const MaskedScorer& scorer,
    const std::vector<std::vector<std::string>>& corpus,
    MaskGranularity granularity = MaskGranularity::kSubToken);

struct PerplexityRow {
  std::string model_name;
  double pp = 0.0;
  std::size_t total_tokens = 0;
};

using NamedScorer = std::pair<std::string, std::shared_ptr<const MaskedScorer>>;

// One row per scorer, ascending by PP; equal PP ordered by name.
std::vector<PerplexityRow> CompareModels(
    const std::vector<std::vector<std::string>>& corpus,
    const std::vector<NamedScorer>& scorers,
    MaskGranularity granularity = MaskGranularity::kSubToken);

// "model_name<TAB>pp<TAB>total_tokens" with a header row.
std::string PerplexityTableTsv(const std::vector<PerplexityRow>& rows);

// Splits text into sentences (one per non-blank line) of whitespace words.
std::vector<std::vector<std::string>> TokenizeCorpus(const std::string& text);

// Every token has probability 1/V.
class UniformScorer : public MaskedScorer {
 public:
  explicit UniformScorer(std::size_t vocab_size);
  double TokenNll(std::span<const std::string> tokens,
                  std::size_t i) const override;

 private:
  double nll_;
};

// Add-one smoothed unigram model. Context-free, so it is a lower-quality
// but fully deterministic stand-in for a real masked LM.
class UnigramScorer : public MaskedScorer {
 public:
  explicit UnigramScorer(const std::vector<std::vector<std::string>>& training);
  double TokenNll(std::span<const std::string> tokens,
                  std::size_t i) const override;
  std::size_t vocab_size() const { return counts_.size() + 1; }

 private:
  std::map<std::string, std::size_t> counts_;
  std::size_t total_ = 0;
};

}  // namespace eventqa

#endif  // EVENTQA_PERPLEXITY_H_
