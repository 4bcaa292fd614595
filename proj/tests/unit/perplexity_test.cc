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

#include <doctest.h>

#include <cmath>
#include <map>

#include "eventqa/errors.h"
#include "eventqa/perplexity.h"

namespace eventqa {
namespace {

using Sentence = std::vector<std::string>;

// Looks up a fixed NLL per token string.
class TableScorer : public MaskedScorer {
 public:
  explicit TableScorer(std::map<std::string, double> nll) : nll_(std::move(nll)) {}
  double TokenNll(std::span<const std::string> tokens, std::size_t i) const override {
    return nll_.at(tokens[i]);
  }

 private:
  std::map<std::string, double> nll_;
};

// Splits every word into two sub-tokens.
class SplittingScorer : public MaskedScorer {
 public:
  std::vector<std::string> Tokenize(const std::string& word) const override {
    return {word + "_1", word + "_2"};
  }
  double TokenNll(std::span<const std::string>, std::size_t) const override { return 1.0; }
  double MaskedSpanNll(std::span<const std::string>, std::size_t begin,
                       std::size_t end) const override {
    // Masking a whole word is harder than masking one sub-token.
    return 1.5 * static_cast<double>(end - begin);
  }
};

TEST_CASE("sentence pseudo-perplexity examples") {
  CHECK(SentencePseudoPerplexity(TableScorer({{"a", 0.0}, {"b", 0.0}}), {"a", "b"}) == 1.0);
  CHECK(SentencePseudoPerplexity(UniformScorer(17), {"x", "y", "z"}) ==
        doctest::Approx(17.0).epsilon(1e-12));
  const TableScorer s({{"a", 0.2}, {"b", 0.4}, {"c", 0.9}});
  CHECK(SentencePseudoPerplexity(s, {"a", "b", "c"}) == doctest::Approx(std::exp(0.5)));
  CHECK_THROWS_AS(SentencePseudoPerplexity(s, {}), ValidationError);
}

TEST_CASE("corpus pseudo-perplexity") {
  const TableScorer s({{"a", 0.2}, {"b", 0.4}, {"c", 0.9}, {"h", std::log(2.0)}});
  const auto single = CorpusPseudoPerplexity(s, {{"a", "b", "c"}});
  CHECK(single.value == doctest::Approx(SentencePseudoPerplexity(s, {"a", "b", "c"})));
  const auto two = CorpusPseudoPerplexity(s, {{"h", "h"}, {"h"}});
  CHECK(two.value == doctest::Approx(2.0));
  CHECK(two.total_tokens == 3);
  REQUIRE(two.per_sentence.size() == 2);
  CHECK(two.per_sentence[0].n_tokens == 2);
  // Token weighted, not a mean of sentence perplexities.
  const auto mixed = CorpusPseudoPerplexity(s, {{"a"}, {"c", "c", "c"}});
  CHECK(mixed.value == doctest::Approx(std::exp((0.2 + 2.7) / 4.0)));
  CHECK_THROWS_AS(CorpusPseudoPerplexity(s, {}), ValidationError);
  CHECK_THROWS_AS(CorpusPseudoPerplexity(s, {{"a"}, {}}), ValidationError);
}

TEST_CASE("mask granularity") {
  SplittingScorer s;
  const auto sub = ScoreSentence(s, {"tom", "ran"}, MaskGranularity::kSubToken);
  CHECK(sub.n_tokens == 4);
  CHECK(sub.total_nll == doctest::Approx(4.0));
  const auto word = ScoreSentence(s, {"tom", "ran"}, MaskGranularity::kWord);
  CHECK(word.n_tokens == 4);
  CHECK(word.total_nll == doctest::Approx(6.0));
}

TEST_CASE("compare models") {
  const std::vector<Sentence> corpus = {{"a", "b"}, {"c"}};
  auto rows = CompareModels(corpus, {{"wide", std::make_shared<UniformScorer>(50)},
                                     {"narrow", std::make_shared<UniformScorer>(5)}});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].model_name == "narrow");
  CHECK(rows[0].pp == doctest::Approx(5.0));
  CHECK(rows[1].total_tokens == 3);
  rows = CompareModels(corpus, {{"z", std::make_shared<UniformScorer>(9)},
                                {"y", std::make_shared<UniformScorer>(9)}});
  CHECK(rows[0].model_name == "y");
  CHECK(CompareModels(corpus, {{"only", std::make_shared<UniformScorer>(3)}}).size() == 1);
  CHECK_THROWS_AS(CompareModels(corpus, {}), ValidationError);
  const auto tsv = PerplexityTableTsv(rows);
  CHECK(tsv.rfind("model_name\tpp\ttotal_tokens\n", 0) == 0);
}

TEST_CASE("corpus tokenization") {
  const auto corpus = TokenizeCorpus("Tom ran  away\n\n  \nFifty dollars\r\n");
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0] == Sentence{"Tom", "ran", "away"});
  CHECK(corpus[1] == Sentence{"Fifty", "dollars"});
}

TEST_CASE("unigram scorer") {
  UnigramScorer s({{"a", "a", "b"}});
  CHECK(s.vocab_size() == 3);
  const Sentence sent = {"a", "zzz"};
  CHECK(s.TokenNll(sent, 0) == doctest::Approx(-std::log(3.0 / 6.0)));
  CHECK(s.TokenNll(sent, 1) == doctest::Approx(-std::log(1.0 / 6.0)));
  CHECK_THROWS_AS(UniformScorer(0), ValidationError);
}

}  // namespace
}  // namespace eventqa
