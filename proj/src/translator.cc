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

#include "eventqa/translator.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <unistd.h>

#include "eventqa/errors.h"
#include "eventqa/hashing.h"

namespace eventqa {
namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string ShellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

std::string EscapeTsvField(const std::string& field) {
  std::string out;
  out.reserve(field.size());
  for (char c : field) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string UnescapeTsvField(const std::string& field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\' || i + 1 == field.size()) {
      out += field[i];
      continue;
    }
    switch (field[++i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: out += field[i];
    }
  }
  return out;
}

std::string CommandTranslator::Translate(const std::string& text, Language src,
                                         Language tgt) {
  char path[] = "/tmp/eventqa-translate-XXXXXX";
  const int fd = mkstemp(path);
  if (fd < 0) throw TransportError("cannot create temporary file");
  {
    std::ofstream tmp(path, std::ios::binary);
    tmp << text;
  }
  close(fd);
  const std::string cmd = command_ + " " + std::string(LanguageCode(src)) + " " +
                          std::string(LanguageCode(tgt)) + " < " + ShellQuote(path);
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::remove(path);
    throw TransportError("cannot run translator command: " + command_);
  }
  std::string output;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, n);
  const int status = pclose(pipe);
  std::remove(path);
  if (status != 0) {
    throw TransportError("translator command failed with status " +
                         std::to_string(status));
  }
  if (!output.empty() && output.back() == '\n') output.pop_back();
  return output;
}

CachingTranslator::CachingTranslator(std::filesystem::path cache_file,
                                     std::shared_ptr<Translator> inner)
    : cache_file_(std::move(cache_file)), inner_(std::move(inner)) {
  Load();
}

std::string CachingTranslator::KeyHash(const std::string& text, Language src,
                                       Language tgt) {
  Fingerprinter fp;
  fp.AddField(LanguageCode(src)).AddField(LanguageCode(tgt)).AddField(text);
  return fp.hex();
}

void CachingTranslator::Load() {
  std::ifstream in(cache_file_, std::ios::binary);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = SplitTabs(line);
    if (fields.size() != 5) {
      throw FormatError(cache_file_.string() + ":" + std::to_string(lineno) +
                        ": expected 5 tab-separated fields");
    }
    entries_[{fields[1], fields[2], UnescapeTsvField(fields[3])}] =
        UnescapeTsvField(fields[4]);
  }
}

std::size_t CachingTranslator::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

std::string CachingTranslator::Translate(const std::string& text, Language src,
                                         Language tgt) {
  Key key{std::string(LanguageCode(src)), std::string(LanguageCode(tgt)), text};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
  }
  if (!inner_) {
    throw TransportError("translation not cached (" + std::get<0>(key) + "->" +
                         std::get<1>(key) + "): " + text.substr(0, 60));
  }
  std::string output = inner_->Translate(text, src, tgt);

  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = entries_.emplace(key, output);
  if (inserted) {
    if (cache_file_.has_parent_path()) {
      std::filesystem::create_directories(cache_file_.parent_path());
    }
    std::ofstream out(cache_file_, std::ios::binary | std::ios::app);
    if (!out) throw TransportError("cannot append to " + cache_file_.string());
    out << KeyHash(text, src, tgt) << '\t' << std::get<0>(key) << '\t'
        << std::get<1>(key) << '\t' << EscapeTsvField(text) << '\t'
        << EscapeTsvField(output) << '\n';
  }
  return it->second;
}

}  // namespace eventqa
