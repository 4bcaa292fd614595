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
#include <stdexcept>

#include "eventqa/hashing.h"
#include "eventqa/utf8.h"

namespace eventqa {
namespace {

TEST_CASE("utf8 round trip and code point offsets") {
  const std::string s = "récompense de 5 £";
  CHECK(utf8::Encode(utf8::Decode(s)) == s);
  CHECK(utf8::Length(s) == 17);
  CHECK(utf8::Substr(s, 0, 10) == "récompense");
  CHECK(utf8::Find(s, "de") == 11);
  CHECK(utf8::Find(s, "£") == 16);
  CHECK(utf8::Find(s, "zz") == utf8::npos);
  CHECK(utf8::Find(s, "r", 1) == utf8::npos);
  CHECK_THROWS_AS(utf8::Substr(s, 15, 5), std::out_of_range);
}

TEST_CASE("invalid bytes decode to replacement characters") {
  const std::string bad = std::string("a") + '\xC3' + "b";
  const auto cps = utf8::Decode(bad);
  REQUIRE(cps.size() == 3);
  CHECK(cps[1] == 0xFFFD);
}

TEST_CASE("case folding covers french and dutch letters") {
  CHECK(utf8::Encode(utf8::FoldAndCollapse("  ÉTÉ  Œuvre\tIJs ")) == "été œuvre ijs");
  CHECK(utf8::FoldCase(U'×') == U'×');
  CHECK(utf8::FoldCase(U'Ÿ') == U'ÿ');
}

TEST_CASE("word splitting") {
  const auto words = utf8::SplitWords(U"  le grand cheval ");
  REQUIRE(words.size() == 3);
  CHECK(words[0].start == 2);
  CHECK(words[0].end == 4);
  CHECK(words[2].start == 11);
  CHECK(utf8::CountWords("") == 0);
}

TEST_CASE("punctuation classes") {
  CHECK(utf8::IsPunct(U'!'));
  CHECK(utf8::IsPunct(U'«'));
  CHECK(utf8::IsPunct(U'\u2014'));
  CHECK_FALSE(utf8::IsPunct(U'é'));
  CHECK_FALSE(utf8::IsPunct(U'5'));
}

TEST_CASE("fingerprints are field separated and stable") {
  Fingerprinter a, b;
  a.AddField("ab").AddField("c");
  b.AddField("a").AddField("bc");
  CHECK(a.value() != b.value());
  // FNV-1a reference value for the empty input.
  CHECK(Fingerprinter().value() == 0xcbf29ce484222325ULL);
  CHECK(Fingerprinter().Add("a").value() == 0xaf63dc4c8601ec8cULL);
  CHECK(ToHex(255) == "00000000000000ff");
}

TEST_CASE("seeded keys depend on seed and id") {
  CHECK(SeededKey(1, "ad1") == SeededKey(1, "ad1"));
  CHECK(SeededKey(1, "ad1") != SeededKey(2, "ad1"));
  std::set<std::uint64_t> keys;
  for (int i = 0; i < 1000; ++i) keys.insert(SeededKey(7, "ad" + std::to_string(i)));
  CHECK(keys.size() == 1000);
}

}  // namespace
}  // namespace eventqa
