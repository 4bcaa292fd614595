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

#ifndef EVENTQA_TRANSLATOR_H_
#define EVENTQA_TRANSLATOR_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "eventqa/types.h"

namespace eventqa {

// Machine translation backend. Implementations throw TransportError when the
// service fails.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::string Translate(const std::string& text, Language src,
                                Language tgt) = 0;
};

class IdentityTranslator : public Translator {
 public:
  std::string Translate(const std::string& text, Language, Language) override {
    return text;
  }
};

class FunctionTranslator : public Translator {
 public:
  using Fn = std::function<std::string(const std::string&, Language, Language)>;
  explicit FunctionTranslator(Fn fn) : fn_(std::move(fn)) {}
  std::string Translate(const std::string& text, Language src,
                        Language tgt) override {
    return fn_(text, src, tgt);
  }

 private:
  Fn fn_;
};

// Runs `command <src> <tgt>` with the text on stdin and takes stdout (minus
// one trailing newline) as the translation. A non-zero exit status is a
// TransportError.
class CommandTranslator : public Translator {
 public:
  explicit CommandTranslator(std::string command) : command_(std::move(command)) {}
  std::string Translate(const std::string& text, Language src,
                        Language tgt) override;

 private:
  std::string command_;
};

// Memoizes another translator in an append-only TSV file with rows
// "hash<TAB>src<TAB>tgt<TAB>input<TAB>output"; tabs, newlines and
// backslashes inside fields are backslash-escaped. With no inner translator
// the cache is read-only and a miss is a TransportError.
class CachingTranslator : public Translator {
 public:
  CachingTranslator(std::filesystem::path cache_file,
                    std::shared_ptr<Translator> inner);

  std::string Translate(const std::string& text, Language src,
                        Language tgt) override;

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  std::size_t size() const;

  static std::string KeyHash(const std::string& text, Language src, Language tgt);

 private:
  using Key = std::tuple<std::string, std::string, std::string>;

  void Load();

  std::filesystem::path cache_file_;
  std::shared_ptr<Translator> inner_;
  mutable std::mutex mu_;
  std::map<Key, std::string> entries_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

std::string EscapeTsvField(const std::string& field);
std::string UnescapeTsvField(const std::string& field);

}  // namespace eventqa

#endif  // EVENTQA_TRANSLATOR_H_
