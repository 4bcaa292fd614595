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

#include "eventqa/hashing.h"

#include <array>

namespace eventqa {

Fingerprinter& Fingerprinter::Add(std::string_view bytes) {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
  return *this;
}

Fingerprinter& Fingerprinter::Add(std::uint64_t value) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  return Add(std::string_view(bytes.data(), bytes.size()));
}

Fingerprinter& Fingerprinter::AddField(std::string_view bytes) {
  Add(static_cast<std::uint64_t>(bytes.size()));
  return Add(bytes);
}

std::string Fingerprinter::hex() const { return ToHex(state_); }

std::uint64_t Mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string ToHex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::uint64_t SeededKey(std::uint64_t seed, std::string_view id) {
  Fingerprinter fp;
  fp.Add(Mix64(seed)).AddField(id);
  return Mix64(fp.value());
}

}  // namespace eventqa
