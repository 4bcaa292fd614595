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

#ifndef EVENTQA_HASHING_H_
#define EVENTQA_HASHING_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace eventqa {

// Platform-independent 64-bit FNV-1a.
class Fingerprinter {
 public:
  Fingerprinter& Add(std::string_view bytes);
  Fingerprinter& Add(std::uint64_t value);
  // Length-prefixed, so Add("ab").Add("c") != Add("a").Add("bc").
  Fingerprinter& AddField(std::string_view bytes);

  std::uint64_t value() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t Mix64(std::uint64_t x);
std::string ToHex(std::uint64_t value);

// Stable rank key of `id` under `seed`. Used for seeded, insertion-stable
// ordering of ads.
std::uint64_t SeededKey(std::uint64_t seed, std::string_view id);

}  // namespace eventqa

#endif  // EVENTQA_HASHING_H_
