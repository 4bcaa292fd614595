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

#include <algorithm>
#include <functional>
#include <map>

#include "eventqa/alignment.h"
#include "eventqa/errors.h"
#include "eventqa/translator.h"
#include "eventqa/utf8.h"
#include "test_util.h"

namespace eventqa {
namespace {

// Plain recursive edit distance, memoized; deliberately not the table-based
// algorithm of the library.
std::size_t OracleDistance(const std::u32string& a, const std::u32string& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i,
                                                                std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = go(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
    best = std::min(best, go(i + 1, j) + 1);
    best = std::min(best, go(i, j + 1) + 1);
    return memo[key] = best;
  };
  return go(0, 0);
}

TEST_CASE("edit distance against recursive oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(0, 8), ch(0, 3);
  for (int t = 0; t < 200; ++t) {
    std::u32string a, b;
    for (int i = len(rng); i > 0; --i) a.push_back(U'a' + ch(rng));
    for (int i = len(rng); i > 0; --i) b.push_back(U'a' + ch(rng));
    CHECK(EditDistance(a, b) == OracleDistance(a, b));
  }
}

TEST_CASE("similarity examples") {
  CHECK(Similarity("cheval noir", "cheval noir") == 1.0);
  CHECK(Similarity("abc", "abd") == doctest::Approx(2.0 / 3.0));
  CHECK(Similarity("", "abc") == 0.0);
  CHECK(Similarity("", "") == 1.0);
  CHECK(Similarity("Cheval   NOIR", "cheval noir") == 1.0);
  CHECK(Similarity("abc", "xyz") == 0.0);
  CHECK(Similarity("kitten", "sitting") == Similarity("sitting", "kitten"));
}

TEST_CASE("k-gram best match examples") {
  auto m = KgramBestMatch("le grand cheval noir", "cheval noir", 2);
  REQUIRE(m);
  CHECK(m->span_text == "cheval noir");
  CHECK(m->char_start == 9);
  CHECK(m->score == 1.0);
  CHECK_FALSE(KgramBestMatch("aa bb cc", "zz yy", 2));
  CHECK_FALSE(KgramBestMatch("aa bb", "aa bb", 3));
  CHECK_THROWS_AS(KgramBestMatch("aa", "aa", 0), ValidationError);
}

TEST_CASE("hand oracle for a rejected window pair") {
  // "aa bb" vs "zz yy": distance 4 of 5 -> 0.2; "bb cc" vs "zz yy": 0.2.
  CHECK(Similarity("aa bb", "zz yy") == doctest::Approx(0.2));
  CHECK(Similarity("bb cc", "zz yy") == doctest::Approx(0.2));
}

TEST_CASE("ties go to the leftmost window") {
  auto m = KgramBestMatch("tom ran tom ran", "tom", 1);
  REQUIRE(m);
  CHECK(m->char_start == 0);
}

TEST_CASE("windows keep original spacing and code point offsets") {
  auto m = KgramBestMatch("récompense de  quarante\tschellings.", "quarante shillings", 2);
  REQUIRE(m);
  CHECK(m->span_text == "quarante\tschellings.");
  CHECK(m->char_start == 15);
  CHECK(utf8::Substr("récompense de  quarante\tschellings.", m->char_start,
                     utf8::Length(m->span_text)) == m->span_text);
}

TEST_CASE("project answer prefers verbatim occurrences") {
  auto p = AlignmentProblem::Make("forty shillings", "une récompense de quarante shillings",
                                  "quarante shillings");
  CHECK(p.k0 == 2);
  auto r = ProjectAnswer(p);
  REQUIRE(r);
  CHECK(r->score == 1.0);
  CHECK(r->span_text == "quarante shillings");
  CHECK(r->char_start == 18);
  CHECK(p.source == ProjectionSource::kTranslatedAnswer);
}

TEST_CASE("project answer fuzzy match") {
  auto p = AlignmentProblem::Make("forty shillings", "une recompense de quarante schellings pour",
                                  "quarante shillings");
  auto r = ProjectAnswer(p);
  REQUIRE(r);
  CHECK(r->span_text == "quarante schellings");
  CHECK(r->score >= 0.5);
}

TEST_CASE("project answer falls back to the source answer") {
  auto p = AlignmentProblem::Make("Pompey", "un homme nommé Pompey, âgé", "Pompée le grand xx");
  auto r = ProjectAnswer(p);
  REQUIRE(r);
  CHECK(r->span_text == "Pompey");
  CHECK(r->char_start == 15);
  CHECK(p.source == ProjectionSource::kSourceAnswer);
}

TEST_CASE("project answer gives up") {
  auto p = AlignmentProblem::Make("zzz", "aaa bbb ccc", "yyy");
  CHECK_FALSE(ProjectAnswer(p));
  CHECK(p.source == ProjectionSource::kNone);
}

TEST_CASE("lowering the threshold never reduces yield") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::string context = testing::RandomWords(rng, 8);
    const std::string query = testing::RandomWords(rng, 2);
    const bool strict = SweepKgrams(context, query, 2, 0.6).has_value();
    const bool loose = SweepKgrams(context, query, 2, 0.4).has_value();
    if (strict) CHECK(loose);
  }
}

class CountingTranslator : public Translator {
 public:
  std::string Translate(const std::string& text, Language, Language) override {
    ++calls;
    if (text == "fail") throw TransportError("offline");
    auto it = table.find(text);
    return it == table.end() ? text : it->second;
  }
  std::map<std::string, std::string> table;
  int calls = 0;
};

TEST_CASE("align record keeps projecting answers only") {
  CountingTranslator tr;
  tr.table["Tom or Jim ran"] = "Tom ou Jacques a fui";
  tr.table["Jim"] = "Jacques";
  tr.table["Tom"] = "Tom";
  QARecord r = testing::Answerable("a", "name", "Tom or Jim ran", "Who?", "Tom");
  r.answers.push_back({"Jim", 7});
  tr.table["Tom"] = "Thomas";
  tr.table["Jim"] = "Jacques";
  AlignmentReport report;
  auto out = AlignRecord(r, "Qui?", tr, {}, &report);
  REQUIRE(out);
  CHECK(out->question == "Qui?");
  CHECK(out->context == "Tom ou Jacques a fui");
  REQUIRE(out->answers.size() == 2);
  CHECK(RecordViolations(*out).empty());

  QARecord two = testing::Answerable("b", "name", "Sam et zz", "Who?", "Sam");
  two.answers.push_back({"zz", 7});
  tr.table["Sam et zz"] = "Samuel et yy";
  tr.table["Sam"] = "Samuel";
  tr.table["zz"] = "qqqq";
  AlignmentReport r2;
  auto kept = AlignRecord(two, "Qui?", tr, {}, &r2);
  REQUIRE(kept);
  CHECK(kept->answers.size() == 1);
  CHECK(kept->answers[0].text == "Samuel");
  CHECK(r2.dropped_answers == 1);
}

TEST_CASE("impossible records are always kept") {
  CountingTranslator tr;
  tr.table["nothing here"] = "rien ici";
  AlignmentReport report;
  auto out = AlignRecord(testing::Impossible("a", "age", "nothing here", "How old?"), "Âge?",
                         tr, {}, &report);
  REQUIRE(out);
  CHECK(out->is_impossible);
  CHECK(out->context == "rien ici");
  CHECK(tr.calls == 1);
  CHECK(report.impossible == 1);
}

TEST_CASE("unprojectable records are discarded") {
  CountingTranslator tr;
  tr.table["aaa bbb"] = "ccc ddd";
  tr.table["aaa"] = "zzzzz";
  AlignmentReport report;
  CHECK_FALSE(AlignRecord(testing::Answerable("a", "x", "aaa bbb", "q", "aaa"), "q", tr, {},
                          &report));
  CHECK(report.discarded == 1);
}

TEST_CASE("translator failures propagate") {
  CountingTranslator tr;
  CHECK_THROWS_AS(AlignRecord(testing::Impossible("a", "x", "fail", "q"), "q", tr, {}),
                  TransportError);
}

TEST_CASE("align records uses target questions by attribute") {
  IdentityTranslator tr;
  AttributeQuestionMap target(Language::kFrench);
  target.Add("name", "Quel est le nom?");
  AlignmentReport report;
  const auto out = AlignRecords({testing::Answerable("a", "name", "Tom ran", "Who?", "Tom")},
                                target, tr, {}, report);
  REQUIRE(out.size() == 1);
  CHECK(out[0].question == "Quel est le nom?");
  CHECK(report.total == 1);
  CHECK(report.kept == 1);
  CHECK(report.discarded == 0);
}

TEST_CASE("caching translator persists and avoids repeat calls") {
  testing::TempDir dir;
  auto inner = std::make_shared<CountingTranslator>();
  inner->table["line\twith\ttabs\nand newline"] = "traduit\\ok";
  {
    CachingTranslator cache(dir / "c.tsv", inner);
    CHECK(cache.Translate("line\twith\ttabs\nand newline", Language::kEnglish,
                          Language::kFrench) == "traduit\\ok");
    cache.Translate("line\twith\ttabs\nand newline", Language::kEnglish, Language::kFrench);
    CHECK(inner->calls == 1);
    CHECK(cache.hits() == 1);
    CHECK(cache.misses() == 1);
  }
  CachingTranslator readonly(dir / "c.tsv", nullptr);
  CHECK(readonly.size() == 1);
  CHECK(readonly.Translate("line\twith\ttabs\nand newline", Language::kEnglish,
                           Language::kFrench) == "traduit\\ok");
  CHECK_THROWS_AS(readonly.Translate("other", Language::kEnglish, Language::kFrench),
                  TransportError);
  CHECK_THROWS_AS(readonly.Translate("line\twith\ttabs\nand newline", Language::kEnglish,
                                     Language::kDutch),
                  TransportError);
}

TEST_CASE("tsv escaping round trips") {
  for (const std::string s : {"", "plain", "a\tb", "a\nb\r", "back\\slash", "\\t"}) {
    CHECK(UnescapeTsvField(EscapeTsvField(s)) == s);
    CHECK(EscapeTsvField(s).find('\t') == std::string::npos);
  }
}

TEST_CASE("command translator") {
  CommandTranslator upper("sh -c 'tr a-z A-Z'");
  CHECK(upper.Translate("tom ran", Language::kEnglish, Language::kFrench) == "TOM RAN");
  CommandTranslator failing("false");
  CHECK_THROWS_AS(failing.Translate("x", Language::kEnglish, Language::kFrench),
                  TransportError);
}

}  // namespace
}  // namespace eventqa
