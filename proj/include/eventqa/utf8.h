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

#ifndef EVENTQA_UTF8_H_
#define EVENTQA_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 helpers. All character offsets exposed by the library are
// Unicode code point offsets, never byte offsets.
namespace eventqa::utf8 {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Invalid sequences decode to U+FFFD.
std::u32string Decode(std::string_view text);
std::string Encode(std::u32string_view text);

// Number of code points in `text`.
std::size_t Length(std::string_view text);

// Code point substring. Throws std::out_of_range if `start + count` runs past
// the end of `text`.
std::string Substr(std::string_view text, std::size_t start, std::size_t count);

// Code point offset of the first occurrence of `needle` at or after code
// point `from`, or npos.
std::size_t Find(std::string_view haystack, std::string_view needle,
                 std::size_t from = 0);

// Simple case folding for ASCII, Latin-1 and Latin Extended-A, which covers
// English, French and Dutch.
char32_t FoldCase(char32_t c);
bool IsSpace(char32_t c);
bool IsPunct(char32_t c);

// Lower-cases and collapses runs of whitespace into single spaces, trimming
// both ends.
std::u32string FoldAndCollapse(std::string_view text);

// A maximal run of non-whitespace code points.
struct Word {
  std::size_t start = 0;  // code point offset
  std::size_t end = 0;    // one past the last code point
};

std::vector<Word> SplitWords(std::u32string_view text);
std::size_t CountWords(std::string_view text);

}  // namespace eventqa::utf8

#endif  // EVENTQA_UTF8_H_
