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

#include <set>

#include "eventqa/conversion.h"
#include "eventqa/errors.h"
#include "eventqa/mock_models.h"
#include "test_util.h"

namespace eventqa {
namespace {

using testing::Ad;

const std::string kText = "RAN AWAY from the subscriber. FIVE POUNDS reward for his return.";

TEST_CASE("one annotation against the full map") {
  const auto ad = Ad("ad7", kText, {{"total_reward", "FIVE POUNDS"}});
  const auto& qmap = RunawaysQuestionMap();
  const auto with = AdToRecords(ad, qmap, {.emit_negatives = true});
  CHECK(with.size() == 35);
  std::size_t answerable = 0;
  for (const auto& r : with) {
    CHECK(RecordViolations(r).empty());
    if (!r.is_impossible) {
      ++answerable;
      CHECK(r.id == "ad7::total_reward");
      CHECK(r.question == "How much reward is offered?");
      CHECK(r.answers[0].text == "FIVE POUNDS");
    }
  }
  CHECK(answerable == 1);
  const auto without = AdToRecords(ad, qmap, {.emit_negatives = false});
  CHECK(without.size() == 1);
}

TEST_CASE("records follow question map order") {
  AttributeQuestionMap qmap;
  qmap.Add("reward", "How much?");
  qmap.Add("name", "Who?");
  const auto records =
      AdToRecords(Ad("a", "Tom, ten dollars", {{"name", "Tom"}, {"reward", "ten dollars"}}),
                  qmap);
  REQUIRE(records.size() == 2);
  CHECK(records[0].attribute == "reward");
  CHECK(records[1].attribute == "name");
}

TEST_CASE("multiple spans of one attribute become multiple golds") {
  AttributeQuestionMap qmap;
  qmap.Add("name", "Who?");
  auto ad = Ad("a", "Tom and Jim and Tom", {{"name", "Jim"}, {"name", "Tom"}, {"name", "Tom"}});
  const auto records = AdToRecords(ad, qmap);
  REQUIRE(records.size() == 1);
  REQUIRE(records[0].answers.size() == 2);
  CHECK(records[0].answers[0].text == "Tom");
  CHECK(records[0].answers[0].answer_start == 0);
  CHECK(records[0].answers[1].text == "Jim");
}

TEST_CASE("non verbatim annotations are discarded and reported") {
  AttributeQuestionMap qmap;
  qmap.Add("name", "Who?");
  AdDocument ad = Ad("a", "Tom ran", {});
  ad.annotations.push_back({"name", "Jim", 0});
  std::vector<Discard> discards;
  const auto records = AdToRecords(ad, qmap, {}, &discards);
  REQUIRE(records.size() == 1);
  CHECK(records[0].is_impossible);
  REQUIRE(discards.size() == 1);
  CHECK(discards[0].span_text == "Jim");
}

TEST_CASE("unknown attributes") {
  AttributeQuestionMap qmap;
  qmap.Add("name", "Who?");
  const auto ad = Ad("a", "Tom aged 20", {{"name", "Tom"}, {"age", "20"}});
  CHECK_THROWS_AS(AdToRecords(ad, qmap), ValidationError);
  std::vector<Discard> discards;
  const auto records = AdToRecords(ad, qmap, {.drop_unknown_attributes = true}, &discards);
  CHECK(records.size() == 1);
  CHECK(discards.size() == 1);
}

TEST_CASE("corpus conversion report") {
  AttributeQuestionMap qmap;
  qmap.Add("name", "Who?");
  qmap.Add("age", "How old?");
  const auto result = ConvertCorpus(
      {Ad("a", "Tom aged 20", {{"name", "Tom"}, {"age", "20"}}), Ad("b", "Sarah", {{"name", "Sarah"}})},
      qmap);
  CHECK(result.report.n_ads == 2);
  CHECK(result.report.answerable_records == 3);
  CHECK(result.report.impossible_records == 1);
  CHECK(result.report.answer_spans == 3);
  CHECK(result.records[0].source_ad_id == "a");
  CHECK(result.records.back().source_ad_id == "b");
}

TEST_CASE("split by ad keeps ads whole") {
  AttributeQuestionMap qmap;
  qmap.Add("name", "Who?");
  qmap.Add("age", "How old?");
  std::vector<AdDocument> ads;
  for (int i = 0; i < 20; ++i) {
    ads.push_back(Ad("ad" + std::to_string(i), "Tom aged 20", {{"name", "Tom"}}));
  }
  const auto split = SplitByAd(ads, qmap, 0.7, 3);
  CHECK(split.train.size() == 28);
  CHECK(split.validation.size() == 12);
  std::set<std::string> train_ads;
  for (const auto& r : split.train) train_ads.insert(r.source_ad_id);
  for (const auto& r : split.validation) CHECK_FALSE(train_ads.count(r.source_ad_id));
}

TEST_CASE("unlabeled examples") {
  AttributeQuestionMap qmap;
  qmap.Add("name", "Who?");
  qmap.Add("age", "How old?");
  const auto examples = MakeUnlabeledExamples({Ad("a", "Tom", {{"name", "Tom"}})}, qmap);
  REQUIRE(examples.size() == 2);
  CHECK(examples[1].id == "a::age");
  CHECK(examples[1].question == "How old?");
  const auto stripped = StripAnswers({testing::Answerable("b", "name", "Jim", "Who?", "Jim")});
  CHECK(stripped[0].context == "Jim");
}

TEST_CASE("argmax with lowest index ties") {
  CHECK(ArgmaxScore({0.40, 0.55, 0.31}) == 1);
  CHECK(ArgmaxScore({0.50, 0.50}) == 0);
  CHECK_THROWS_AS(ArgmaxScore({}), ValidationError);
}

TEST_CASE("question selection with precomputed scores") {
  QuestionCandidateSet set{"reward", {"q1", "q2", "q3"}, std::vector<double>{0.40, 0.55, 0.31}};
  FirstTokenModel frozen;
  const auto sel = SelectBestQuestion(set, [](const std::string&) {
    return std::vector<QARecord>{};
  }, frozen);
  CHECK(sel.selected == 1);
  CHECK(sel.question() == "q2");
  QuestionCandidateSet bad{"x", {}, std::nullopt};
  CHECK_THROWS_AS(bad.Validate(), ValidationError);
  QuestionCandidateSet out_of_range{"x", {"q"}, std::vector<double>{1.5}};
  CHECK_THROWS_AS(out_of_range.Validate(), ValidationError);
}

TEST_CASE("question selection scores candidates with the frozen model") {
  // The oracle knows answers only for records asked with the second question.
  const std::vector<AdDocument> ads = {Ad("a", "Tom ran", {{"name", "Tom"}}),
                                       Ad("b", "Jim ran", {{"name", "Jim"}})};
  const auto builder = AttributeRecordsBuilder(ads, "name");
  OracleModel oracle(builder("What is the name?"));
  QuestionCandidateSet set{"name", {"Who ran?", "What is the name?"}, std::nullopt};
  const auto sel = SelectBestQuestion(set, builder, oracle);
  CHECK(sel.selected == 1);
  CHECK(sel.scores[0] == doctest::Approx(0.0));
  CHECK(sel.scores[1] == doctest::Approx(1.0));
  const std::string tsv = SelectionProvenanceTsv({sel});
  CHECK(tsv.find("name\tWhat is the name?\t1.000000\t1") != std::string::npos);
}

TEST_CASE("question grid") {
  FirstTokenModel frozen;
  const std::vector<QuestionCandidateSet> sets = {{"name", {"Who?"}, std::nullopt},
                                                  {"age", {"How old?"}, std::nullopt}};
  const auto grid = BuildQuestionGrid({"name", "age"}, sets,
                                      {Ad("a", "Tom aged 20", {{"name", "Tom"}})}, frozen);
  CHECK(grid.map.attributes() == std::vector<std::string>{"name", "age"});
  CHECK(grid.map.Question("age") == "How old?");
  try {
    BuildQuestionGrid({"name", "reward"}, sets, {}, frozen);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("reward") != std::string::npos);
  }
}

}  // namespace
}  // namespace eventqa
