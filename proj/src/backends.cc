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

#include "eventqa/backends.h"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "eventqa/errors.h"
#include "eventqa/mock_models.h"

namespace eventqa {
namespace {

template <typename Factory>
class Registry {
 public:
  void Add(const std::string& name, Factory f) {
    std::lock_guard<std::mutex> lock(mu_);
    factories_[name] = std::move(f);
  }

  Factory Find(const std::string& kind, const std::string& name) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = factories_.find(name); it != factories_.end()) return it->second;
    const Factory* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& [key, f] : factories_) {
      if (key.empty() || (key.back() != '.' && key.back() != ':')) continue;
      if (name.size() > key.size() && name.compare(0, key.size(), key) == 0 &&
          key.size() > best_len) {
        best = &f;
        best_len = key.size();
      }
    }
    if (!best) {
      throw ValidationError("unknown " + kind + " backend '" + name + "'");
    }
    return *best;
  }

  bool Has(const std::string& name) const {
    try {
      Find("", name);
      return true;
    } catch (const ValidationError&) {
      return false;
    }
  }

  std::vector<std::string> Names() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<std::string> out;
    for (const auto& [k, f] : factories_) out.push_back(k);
    return out;
  }

 private:
  mutable std::mutex mu_;
  std::map<std::string, Factory> factories_;
};

const std::vector<QARecord>& RequireReference(const std::string& name,
                                              const BackendContext& ctx) {
  if (!ctx.reference) {
    throw ValidationError("backend '" + name + "' needs reference records");
  }
  return *ctx.reference;
}

Registry<QaFactory>& QaRegistry() {
  static Registry<QaFactory>* r = [] {
    auto* reg = new Registry<QaFactory>();
    reg->Add("mock.first_token", [](const std::string&, const BackendContext&) {
      return std::make_shared<FirstTokenModel>();
    });
    reg->Add("mock.no_answer", [](const std::string&, const BackendContext&) {
      return std::make_shared<NoAnswerModel>();
    });
    reg->Add("mock.oracle", [](const std::string& name, const BackendContext& ctx) {
      return std::make_shared<OracleModel>(RequireReference(name, ctx));
    });
    reg->Add("mock.memorize", [](const std::string&, const BackendContext&) {
      return std::make_shared<MemorizingModel>(false);
    });
    reg->Add("mock.lexicon", [](const std::string&, const BackendContext&) {
      return std::make_shared<MemorizingModel>(true);
    });
    return reg;
  }();
  return *r;
}

Registry<PromptFactory>& PromptRegistry() {
  static Registry<PromptFactory>* r = [] {
    auto* reg = new Registry<PromptFactory>();
    reg->Add("mock.prompt_oracle",
             [](const std::string& name, const BackendContext& ctx) {
               return std::make_shared<OraclePromptModel>(RequireReference(name, ctx));
             });
    reg->Add("mock.prompt_none", [](const std::string&, const BackendContext&) {
      return std::make_shared<ConstantPromptModel>("");
    });
    return reg;
  }();
  return *r;
}

Registry<ScorerFactory>& ScorerRegistry() {
  static Registry<ScorerFactory>* r = [] {
    auto* reg = new Registry<ScorerFactory>();
    reg->Add("mock.uniform:", [](const std::string& name) {
      const std::string v = name.substr(name.find(':') + 1);
      std::size_t used = 0;
      unsigned long long size = 0;
      try {
        size = std::stoull(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != v.size() || size == 0) {
        throw ValidationError("bad vocabulary size in '" + name + "'");
      }
      return std::make_shared<UniformScorer>(size);
    });
    reg->Add("unigram:", [](const std::string& name) {
      const std::string path = name.substr(name.find(':') + 1);
      std::ifstream in(path, std::ios::binary);
      if (!in) throw ValidationError("cannot read unigram training text " + path);
      std::ostringstream ss;
      ss << in.rdbuf();
      return std::make_shared<UnigramScorer>(TokenizeCorpus(ss.str()));
    });
    return reg;
  }();
  return *r;
}

}  // namespace

void RegisterQaBackend(const std::string& name, QaFactory factory) {
  QaRegistry().Add(name, std::move(factory));
}

void RegisterPromptBackend(const std::string& name, PromptFactory factory) {
  PromptRegistry().Add(name, std::move(factory));
}

void RegisterScorerBackend(const std::string& name, ScorerFactory factory) {
  ScorerRegistry().Add(name, std::move(factory));
}

std::shared_ptr<const QAModel> MakeQaModel(const std::string& name,
                                           const BackendContext& ctx) {
  auto model = QaRegistry().Find("QA", name)(name, ctx);
  if (!model) throw BackendError("backend '" + name + "' produced no model");
  return model;
}

std::shared_ptr<const TrainableQAModel> MakeTrainableQaModel(
    const std::string& name, const BackendContext& ctx) {
  auto trainable = std::dynamic_pointer_cast<const TrainableQAModel>(MakeQaModel(name, ctx));
  if (!trainable) throw ValidationError("backend '" + name + "' is not trainable");
  return trainable;
}

std::shared_ptr<const PromptModel> MakePromptModel(const std::string& name,
                                                   const BackendContext& ctx) {
  auto model = PromptRegistry().Find("prompt", name)(name, ctx);
  if (!model) throw BackendError("backend '" + name + "' produced no model");
  return model;
}

std::shared_ptr<const MaskedScorer> MakeScorer(const std::string& name) {
  auto scorer = ScorerRegistry().Find("scorer", name)(name);
  if (!scorer) throw BackendError("backend '" + name + "' produced no scorer");
  return scorer;
}

bool HasQaBackend(const std::string& name) { return QaRegistry().Has(name); }

std::vector<std::string> RegisteredQaBackends() { return QaRegistry().Names(); }

}  // namespace eventqa
