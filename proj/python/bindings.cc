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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eventqa/alignment.h"
#include "eventqa/backends.h"
#include "eventqa/conversion.h"
#include "eventqa/corpus.h"
#include "eventqa/errors.h"
#include "eventqa/metrics.h"
#include "eventqa/model.h"
#include "eventqa/perplexity.h"
#include "eventqa/prompting.h"
#include "eventqa/regimes.h"
#include "eventqa/squad_io.h"
#include "eventqa/translator.h"

namespace py = pybind11;
using namespace eventqa;

namespace {

Language Lang(const std::string& code) { return ParseLanguage(code); }
std::string Code(Language lang) { return std::string(LanguageCode(lang)); }

py::object JsonToPy(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json PyToJson(const py::object& obj) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

template <typename T>
std::shared_ptr<T> Mutable(std::shared_ptr<const T> p) {
  return std::const_pointer_cast<T>(std::move(p));
}

// Calls the Python override `name`, or throws BackendError if absent.
template <typename Base, typename... Args>
py::object CallOverride(const Base* self, const char* name, Args&&... args) {
  py::gil_scoped_acquire gil;
  py::function f = py::get_override(self, name);
  if (!f) throw BackendError(std::string("Python model does not implement ") + name);
  return f(std::forward<Args>(args)...);
}

class PyQAModel : public QAModel, public py::trampoline_self_life_support {
 public:
  SpanPrediction Predict(const std::string& context, const std::string& question) const override {
    return CallOverride<QAModel>(this, "predict", context, question).cast<SpanPrediction>();
  }
  std::string Fingerprint() const override {
    return CallOverride<QAModel>(this, "fingerprint").cast<std::string>();
  }
};

class PyTrainableQAModel : public TrainableQAModel, public py::trampoline_self_life_support {
 public:
  using Ptr = std::shared_ptr<const TrainableQAModel>;

  SpanPrediction Predict(const std::string& context, const std::string& question) const override {
    return CallOverride<TrainableQAModel>(this, "predict", context, question)
        .cast<SpanPrediction>();
  }
  std::string Fingerprint() const override {
    return CallOverride<TrainableQAModel>(this, "fingerprint").cast<std::string>();
  }
  Ptr Train(const std::vector<QARecord>& records, const TrainConfig& config) const override {
    return CallOverride<TrainableQAModel>(this, "train", records, config)
        .cast<std::shared_ptr<TrainableQAModel>>();
  }
  Ptr TrainMlm(const std::vector<std::string>& corpus, const TrainConfig& config) const override {
    return CallOverride<TrainableQAModel>(this, "train_mlm", corpus, config)
        .cast<std::shared_ptr<TrainableQAModel>>();
  }
  Ptr TrainJoint(const std::vector<QARecord>& records, const std::vector<std::string>& corpus,
                 const TrainConfig& config, const JointSchedule& schedule) const override {
    return CallOverride<TrainableQAModel>(this, "train_joint", records, corpus, config, schedule)
        .cast<std::shared_ptr<TrainableQAModel>>();
  }
};

class PyPromptModel : public PromptModel, public py::trampoline_self_life_support {
 public:
  std::string Generate(const std::string& prompt) const override {
    return CallOverride<PromptModel>(this, "generate", prompt).cast<std::string>();
  }
  std::string Fingerprint() const override {
    return CallOverride<PromptModel>(this, "fingerprint").cast<std::string>();
  }
};

class PyMaskedScorer : public MaskedScorer, public py::trampoline_self_life_support {
 public:
  std::vector<std::string> Tokenize(const std::string& word) const override {
    PYBIND11_OVERRIDE_NAME(std::vector<std::string>, MaskedScorer, "tokenize", Tokenize, word);
  }
  double TokenNll(std::span<const std::string> tokens, std::size_t i) const override {
    std::vector<std::string> copy(tokens.begin(), tokens.end());
    return CallOverride<MaskedScorer>(this, "token_nll", copy, i).cast<double>();
  }
};

class PyTranslator : public Translator, public py::trampoline_self_life_support {
 public:
  std::string Translate(const std::string& text, Language src, Language tgt) override {
    return CallOverride<Translator>(this, "translate", text, Code(src), Code(tgt))
        .cast<std::string>();
  }
};

RunOptions MakeRunOptions(const char* kind, const py::object& spec, const std::string& language,
                          double null_threshold) {
  RunOptions opts;
  nlohmann::json j = spec.is_none() ? nlohmann::json::object() : PyToJson(spec);
  if (!j.contains("kind")) j["kind"] = kind;
  opts.spec = RegimeSpec::FromJson(j);
  opts.eval.language = Lang(language);
  opts.null_threshold = null_threshold;
  return opts;
}

ModelFactory WrapFactory(py::function factory) {
  return [factory]() -> std::shared_ptr<const TrainableQAModel> {
    py::gil_scoped_acquire gil;
    return factory().cast<std::shared_ptr<TrainableQAModel>>();
  };
}

// Registry entries outlive the interpreter; keep the callables alive forever
// rather than release them after finalization.
py::function* Leak(py::function f) { return new py::function(std::move(f)); }

}  // namespace

PYBIND11_MODULE(_eventqa, m) {
  m.doc() = "Event attribute extraction as extractive question answering.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", base);
  py::register_exception<IntegrityError>(m, "IntegrityError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<TransportError>(m, "TransportError", base);
  py::register_exception<BackendError>(m, "BackendError", base);

  // Data model.
  py::class_<Answer>(m, "Answer")
      .def(py::init([](std::string text, std::size_t start) { return Answer{std::move(text), start}; }),
           py::arg("text"), py::arg("answer_start"))
      .def_readwrite("text", &Answer::text)
      .def_readwrite("answer_start", &Answer::answer_start)
      .def("__eq__", [](const Answer& a, const Answer& b) { return a == b; })
      .def("__repr__", [](const Answer& a) {
        return "Answer(" + py::repr(py::str(a.text)).cast<std::string>() + ", " +
               std::to_string(a.answer_start) + ")";
      });

  py::class_<QARecord>(m, "QARecord")
      .def(py::init<>())
      .def(py::init([](std::string id, std::string context, std::string question,
                       std::vector<Answer> answers, bool is_impossible, std::string attribute,
                       std::string source_ad_id) {
             return QARecord{std::move(id),        std::move(context),   std::move(question),
                             std::move(answers),   is_impossible,        std::move(attribute),
                             std::move(source_ad_id)};
           }),
           py::arg("id"), py::arg("context"), py::arg("question"),
           py::arg("answers") = std::vector<Answer>{}, py::arg("is_impossible") = false,
           py::arg("attribute") = "", py::arg("source_ad_id") = "")
      .def_readwrite("id", &QARecord::id)
      .def_readwrite("context", &QARecord::context)
      .def_readwrite("question", &QARecord::question)
      .def_readwrite("answers", &QARecord::answers)
      .def_readwrite("is_impossible", &QARecord::is_impossible)
      .def_readwrite("attribute", &QARecord::attribute)
      .def_readwrite("source_ad_id", &QARecord::source_ad_id)
      .def("violations", &RecordViolations)
      .def("__eq__", [](const QARecord& a, const QARecord& b) { return a == b; })
      .def("__repr__", [](const QARecord& r) { return "QARecord(" + r.id + ")"; });

  py::class_<AttributeAnnotation>(m, "AttributeAnnotation")
      .def(py::init([](std::string attribute, std::string span, std::size_t start) {
             return AttributeAnnotation{std::move(attribute), std::move(span), start};
           }),
           py::arg("attribute"), py::arg("span_text"), py::arg("char_start"))
      .def_readwrite("attribute", &AttributeAnnotation::attribute)
      .def_readwrite("span_text", &AttributeAnnotation::span_text)
      .def_readwrite("char_start", &AttributeAnnotation::char_start);

  py::class_<AdDocument>(m, "AdDocument")
      .def(py::init([](std::string id, std::string text, std::vector<AttributeAnnotation> anns,
                       const std::string& language) {
             AdDocument ad;
             ad.id = std::move(id);
             ad.text = std::move(text);
             ad.annotations = std::move(anns);
             ad.language = Lang(language);
             return ad;
           }),
           py::arg("id"), py::arg("text"),
           py::arg("annotations") = std::vector<AttributeAnnotation>{}, py::arg("language") = "en")
      .def_readwrite("id", &AdDocument::id)
      .def_readwrite("text", &AdDocument::text)
      .def_readwrite("annotations", &AdDocument::annotations)
      .def_property(
          "language", [](const AdDocument& a) { return Code(a.language); },
          [](AdDocument& a, const std::string& code) { a.language = Lang(code); });

  py::class_<AttributeQuestionMap>(m, "AttributeQuestionMap")
      .def(py::init([](const std::string& language) { return AttributeQuestionMap(Lang(language)); }),
           py::arg("language") = "en")
      .def("add", &AttributeQuestionMap::Add)
      .def("__contains__", [](const AttributeQuestionMap& q, const std::string& a) { return q.Contains(a); })
      .def("question", [](const AttributeQuestionMap& q, const std::string& a) { return q.Question(a); })
      .def("__len__", &AttributeQuestionMap::size)
      .def_property_readonly("attributes", &AttributeQuestionMap::attributes)
      .def_property_readonly("entries", &AttributeQuestionMap::entries)
      .def_property_readonly("language", [](const AttributeQuestionMap& q) { return Code(q.language()); });

  m.def("make_record_id", [](const std::string& ad, const std::string& attr) { return MakeRecordId(ad, attr); });
  m.def("parse_squad", &ParseSquad);
  m.def("serialize_squad", &SerializeSquad);
  m.def("load_squad", &LoadSquadFile);
  m.def("save_squad", &SaveSquadFile);
  m.def("dataset_hash", &DatasetHash);
  m.def("validate_records", &ValidateRecords);

  // Corpus and conversion.
  m.def("load_ads", [](const std::filesystem::path& path) {
    auto loaded = LoadAdsFile(path);
    py::list discards;
    for (const auto& d : loaded.discards) {
      discards.append(py::make_tuple(d.ad_id, d.attribute, d.span_text, d.reason));
    }
    return py::make_tuple(loaded.ads, discards);
  });
  m.def("runaways_question_map", &RunawaysQuestionMap, py::return_value_policy::copy);
  m.def("runaways_annotation_counts", &RunawaysAnnotationCounts, py::return_value_policy::copy);
  m.def("parse_question_map",
        [](const std::string& tsv, const std::string& lang) { return ParseQuestionMap(tsv, Lang(lang)); },
        py::arg("tsv"), py::arg("language") = "en");
  m.def("ad_to_records",
        [](const AdDocument& ad, const AttributeQuestionMap& qmap, bool emit_negatives,
           bool drop_unknown) {
          return AdToRecords(ad, qmap, {emit_negatives, drop_unknown});
        },
        py::arg("ad"), py::arg("question_map"), py::arg("emit_negatives") = true,
        py::arg("drop_unknown_attributes") = false);
  m.def("convert_corpus",
        [](const std::vector<AdDocument>& ads, const AttributeQuestionMap& qmap,
           bool emit_negatives, bool drop_unknown) {
          auto result = ConvertCorpus(ads, qmap, {emit_negatives, drop_unknown});
          py::dict report;
          report["n_ads"] = result.report.n_ads;
          report["answerable_records"] = result.report.answerable_records;
          report["impossible_records"] = result.report.impossible_records;
          report["answer_spans"] = result.report.answer_spans;
          report["discarded"] = result.report.discarded;
          return py::make_tuple(result.records, report);
        },
        py::arg("ads"), py::arg("question_map"), py::arg("emit_negatives") = true,
        py::arg("drop_unknown_attributes") = false);
  m.def("partition_ads",
        [](const std::vector<AdDocument>& ads, double fraction, std::uint64_t seed) {
          auto p = PartitionAds(ads, fraction, seed);
          return py::make_tuple(p.train, p.validation);
        },
        py::arg("ads"), py::arg("train_fraction") = 0.7, py::arg("seed") = 0);

  // Metrics.
  m.def("normalize_answer",
        [](const std::string& text, const std::string& lang) { return NormalizeAnswer(text, Lang(lang)); },
        py::arg("text"), py::arg("language") = "en");
  m.def("span_f1",
        [](const std::string& pred, const std::vector<std::string>& golds, const std::string& lang) {
          return SpanF1(pred, golds, Lang(lang));
        },
        py::arg("prediction"), py::arg("golds"), py::arg("language") = "en");
  m.def("exact_match",
        [](const std::string& pred, const std::vector<std::string>& golds, const std::string& lang) {
          return ExactMatch(pred, golds, Lang(lang));
        },
        py::arg("prediction"), py::arg("golds"), py::arg("language") = "en");

  py::class_<Prediction>(m, "Prediction")
      .def(py::init([](std::string id, std::string text, std::optional<std::size_t> start) {
             Prediction p;
             p.record_id = std::move(id);
             p.text = std::move(text);
             p.char_start = start;
             return p;
           }),
           py::arg("record_id"), py::arg("text"), py::arg("char_start") = py::none())
      .def_readwrite("record_id", &Prediction::record_id)
      .def_readwrite("text", &Prediction::text)
      .def_readwrite("char_start", &Prediction::char_start)
      .def_readwrite("no_answer_score_margin", &Prediction::no_answer_score_margin);

  py::class_<GroupScore>(m, "GroupScore")
      .def_readonly("f1", &GroupScore::f1)
      .def_readonly("exact_match", &GroupScore::exact_match)
      .def_readonly("n", &GroupScore::n);
  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("f1", &MetricsReport::f1)
      .def_readonly("exact_match", &MetricsReport::exact_match)
      .def_readonly("n", &MetricsReport::n)
      .def_readonly("per_attribute", &MetricsReport::per_attribute)
      .def("to_json", &MetricsToJson);
  m.def("evaluate",
        [](const std::vector<Prediction>& preds, const std::vector<QARecord>& records,
           const std::string& lang) {
          EvaluateOptions opts;
          opts.language = Lang(lang);
          return Evaluate(preds, records, opts);
        },
        py::arg("predictions"), py::arg("records"), py::arg("language") = "en");
  m.def("pairwise_iaa",
        [](const std::vector<AdDocument>& a, const std::vector<AdDocument>& b) { return PairwiseIaa(a, b); });

  // Alignment.
  py::class_<SpanMatch>(m, "SpanMatch")
      .def_readonly("span_text", &SpanMatch::span_text)
      .def_readonly("char_start", &SpanMatch::char_start)
      .def_readonly("score", &SpanMatch::score)
      .def_readonly("k", &SpanMatch::k);
  m.def("similarity", &Similarity);
  m.def("kgram_best_match", &KgramBestMatch, py::arg("context"), py::arg("query"), py::arg("k"),
        py::arg("threshold") = kDefaultMatchThreshold);
  m.def("sweep_kgrams", &SweepKgrams, py::arg("context"), py::arg("query"), py::arg("k0"),
        py::arg("threshold") = kDefaultMatchThreshold, py::arg("sweep") = kWindowSweep);
  m.def("project_answer",
        [](const std::string& source_answer, const std::string& translated_context,
           const std::string& translated_answer, double threshold) {
          auto p = AlignmentProblem::Make(source_answer, translated_context, translated_answer);
          auto r = ProjectAnswer(p, threshold);
          const char* source = p.source == ProjectionSource::kTranslatedAnswer ? "translated"
                               : p.source == ProjectionSource::kSourceAnswer   ? "source"
                                                                               : "none";
          return py::make_tuple(r, source);
        },
        py::arg("source_answer"), py::arg("translated_context"), py::arg("translated_answer"),
        py::arg("threshold") = kDefaultMatchThreshold);

  py::class_<Translator, PyTranslator, py::smart_holder>(m, "Translator")
      .def(py::init<>())
      .def("translate", [](Translator& t, const std::string& text, const std::string& src,
                           const std::string& tgt) { return t.Translate(text, Lang(src), Lang(tgt)); });
  m.def("align_records",
        [](const std::vector<QARecord>& records, const AttributeQuestionMap& target_questions,
           Translator& translator, const std::string& src, const std::string& tgt,
           double threshold) {
          AlignmentReport report;
          auto out = AlignRecords(records, target_questions, translator,
                                  {Lang(src), Lang(tgt), threshold}, report);
          py::dict d;
          d["total"] = report.total;
          d["impossible"] = report.impossible;
          d["projected_translated"] = report.projected_translated;
          d["projected_fallback"] = report.projected_fallback;
          d["dropped_answers"] = report.dropped_answers;
          d["discarded"] = report.discarded;
          d["kept"] = report.kept;
          return py::make_tuple(out, d);
        },
        py::arg("records"), py::arg("target_questions"), py::arg("translator"),
        py::arg("source_language") = "en", py::arg("target_language"),
        py::arg("threshold") = kDefaultMatchThreshold);

  // Pseudo-perplexity.
  py::class_<MaskedScorer, PyMaskedScorer, py::smart_holder>(m, "MaskedScorer")
      .def(py::init<>())
      .def("tokenize", &MaskedScorer::Tokenize)
      .def("token_nll", [](const MaskedScorer& s, const std::vector<std::string>& tokens,
                           std::size_t i) { return s.TokenNll(tokens, i); });
  py::class_<UniformScorer, MaskedScorer, py::smart_holder>(m, "UniformScorer")
      .def(py::init<std::size_t>(), py::arg("vocab_size"));
  py::class_<UnigramScorer, MaskedScorer, py::smart_holder>(m, "UnigramScorer")
      .def(py::init<const std::vector<std::vector<std::string>>&>(), py::arg("sentences"))
      .def_property_readonly("vocab_size", &UnigramScorer::vocab_size);

  auto granularity = [](const std::string& g) {
    if (g == "subtoken") return MaskGranularity::kSubToken;
    if (g == "word") return MaskGranularity::kWord;
    throw ValidationError("mask granularity must be 'subtoken' or 'word', got '" + g + "'");
  };
  m.def("tokenize_corpus", &TokenizeCorpus);
  m.def("corpus_pseudo_perplexity",
        [granularity](const MaskedScorer& scorer, const std::vector<std::vector<std::string>>& corpus,
                      const std::string& g) {
          auto cp = CorpusPseudoPerplexity(scorer, corpus, granularity(g));
          return py::make_tuple(cp.value, cp.total_tokens);
        },
        py::arg("scorer"), py::arg("corpus"), py::arg("granularity") = "subtoken");
  m.def("compare_models",
        [granularity](const std::vector<std::vector<std::string>>& corpus,
                      const std::vector<std::pair<std::string, std::shared_ptr<MaskedScorer>>>& scorers,
                      const std::string& g) {
          std::vector<NamedScorer> named(scorers.begin(), scorers.end());
          py::list rows;
          for (const auto& r : CompareModels(corpus, named, granularity(g))) {
            rows.append(py::make_tuple(r.model_name, r.pp, r.total_tokens));
          }
          return rows;
        },
        py::arg("corpus"), py::arg("scorers"), py::arg("granularity") = "subtoken");

  // Models.
  py::class_<SpanPrediction>(m, "SpanPrediction")
      .def(py::init([](std::string span, std::size_t start, double answer, double no_answer) {
             return SpanPrediction{std::move(span), start, answer, no_answer};
           }),
           py::arg("span_text") = "", py::arg("char_start") = 0, py::arg("answer_score") = 0.0,
           py::arg("no_answer_score") = 0.0)
      .def_readwrite("span_text", &SpanPrediction::span_text)
      .def_readwrite("char_start", &SpanPrediction::char_start)
      .def_readwrite("answer_score", &SpanPrediction::answer_score)
      .def_readwrite("no_answer_score", &SpanPrediction::no_answer_score);

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("batch_size", &TrainConfig::batch_size)
      .def_readwrite("joint_qa_batch_size", &TrainConfig::joint_qa_batch_size)
      .def_readwrite("joint_mlm_batch_size", &TrainConfig::joint_mlm_batch_size)
      .def_readwrite("weight_decay", &TrainConfig::weight_decay)
      .def_readwrite("max_sequence_length", &TrainConfig::max_sequence_length)
      .def_readwrite("seed", &TrainConfig::seed)
      .def("validate", &TrainConfig::Validate)
      .def("hash", &TrainConfig::Hash);

  py::class_<JointSchedule>(m, "JointSchedule")
      .def("__str__", &JointSchedule::ToString)
      .def("__len__", [](const JointSchedule& s) { return s.steps.size(); })
      .def("count", [](const JointSchedule& s, const std::string& o) {
        return s.count(o == "qa" ? Objective::kQa : Objective::kMlm);
      });
  m.def("make_joint_schedule", &MakeJointSchedule);

  py::class_<QAModel, PyQAModel, py::smart_holder>(m, "QAModel")
      .def(py::init<>())
      .def("predict", &QAModel::Predict)
      .def("fingerprint", &QAModel::Fingerprint);
  py::class_<TrainableQAModel, QAModel, PyTrainableQAModel, py::smart_holder>(m, "TrainableQAModel")
      .def(py::init<>())
      .def("train", [](const TrainableQAModel& mdl, const std::vector<QARecord>& r,
                       const TrainConfig& c) { return Mutable(mdl.Train(r, c)); })
      .def("train_mlm", [](const TrainableQAModel& mdl, const std::vector<std::string>& corpus,
                           const TrainConfig& c) { return Mutable(mdl.TrainMlm(corpus, c)); })
      .def("train_joint", [](const TrainableQAModel& mdl, const std::vector<QARecord>& r,
                             const std::vector<std::string>& corpus, const TrainConfig& c,
                             const JointSchedule& s) { return Mutable(mdl.TrainJoint(r, corpus, c, s)); });
  py::class_<PromptModel, PyPromptModel, py::smart_holder>(m, "PromptModel")
      .def(py::init<>())
      .def("generate", &PromptModel::Generate)
      .def("fingerprint", &PromptModel::Fingerprint);

  m.def("predict_answer", &PredictAnswer, py::arg("model"), py::arg("record"),
        py::arg("null_threshold") = kDefaultNullThreshold);
  m.def("predict_all", &PredictAll, py::arg("model"), py::arg("records"),
        py::arg("null_threshold") = kDefaultNullThreshold);
  m.def("fine_tune", [](const TrainableQAModel& mdl, const std::vector<QARecord>& r,
                        const TrainConfig& c) { return Mutable(FineTune(mdl, r, c)); });
  m.def("build_prompt", &BuildPrompt);

  // Backend registry.
  m.def("qa_backend", [](const std::string& name) { return Mutable(MakeQaModel(name)); });
  m.def("trainable_qa_backend",
        [](const std::string& name) { return Mutable(MakeTrainableQaModel(name)); });
  m.def("prompt_backend", [](const std::string& name) { return Mutable(MakePromptModel(name)); });
  m.def("scorer_backend", [](const std::string& name) { return Mutable(MakeScorer(name)); });
  m.def("registered_qa_backends", &RegisteredQaBackends);
  m.def("register_qa_backend", [](const std::string& name, py::function factory) {
    auto* f = Leak(std::move(factory));
    RegisterQaBackend(name, [f](const std::string& n, const BackendContext&) {
      py::gil_scoped_acquire gil;
      return std::shared_ptr<const QAModel>((*f)(n).cast<std::shared_ptr<QAModel>>());
    });
  });
  m.def("register_prompt_backend", [](const std::string& name, py::function factory) {
    auto* f = Leak(std::move(factory));
    RegisterPromptBackend(name, [f](const std::string& n, const BackendContext&) {
      py::gil_scoped_acquire gil;
      return std::shared_ptr<const PromptModel>((*f)(n).cast<std::shared_ptr<PromptModel>>());
    });
  });
  m.def("register_scorer_backend", [](const std::string& name, py::function factory) {
    auto* f = Leak(std::move(factory));
    RegisterScorerBackend(name, [f](const std::string& n) {
      py::gil_scoped_acquire gil;
      return std::shared_ptr<const MaskedScorer>((*f)(n).cast<std::shared_ptr<MaskedScorer>>());
    });
  });

  // Regimes.
  py::class_<PseudoLabel>(m, "PseudoLabel")
      .def_readonly("round", &PseudoLabel::round)
      .def_readonly("record_id", &PseudoLabel::record_id)
      .def_readonly("answer", &PseudoLabel::answer)
      .def_readonly("char_start", &PseudoLabel::char_start)
      .def_readonly("votes", &PseudoLabel::votes);
  py::class_<RegimeRunResult>(m, "RegimeRunResult")
      .def_readonly("metrics", &RegimeRunResult::metrics)
      .def_readonly("model_fingerprint", &RegimeRunResult::model_fingerprint)
      .def_readonly("phases", &RegimeRunResult::phases)
      .def_readonly("log", &RegimeRunResult::log)
      .def_readonly("adopted_per_round", &RegimeRunResult::adopted_per_round)
      .def_readonly("adopted", &RegimeRunResult::adopted)
      .def_property_readonly("spec", [](const RegimeRunResult& r) { return JsonToPy(r.spec.ToJson()); })
      .def_property_readonly("provenance", [](const RegimeRunResult& r) { return JsonToPy(r.provenance); });

  py::class_<UnlabeledExample>(m, "UnlabeledExample")
      .def(py::init([](std::string id, std::string context, std::string question,
                       std::string attribute, std::string ad) {
             return UnlabeledExample{std::move(id), std::move(context), std::move(question),
                                     std::move(attribute), std::move(ad)};
           }),
           py::arg("id"), py::arg("context"), py::arg("question"), py::arg("attribute") = "",
           py::arg("source_ad_id") = "")
      .def_readonly("id", &UnlabeledExample::id)
      .def_readonly("context", &UnlabeledExample::context)
      .def_readonly("question", &UnlabeledExample::question);
  m.def("strip_answers", &StripAnswers);

  m.def("sample_budget", &SampleBudget, py::arg("train"), py::arg("budget_ads"), py::arg("seed") = 0);
  m.def("count_ads", &CountAds);

  const auto spec_arg = py::arg("spec") = py::none();
  const auto lang_arg = py::arg("language") = "en";
  const auto null_arg = py::arg("null_threshold") = kDefaultNullThreshold;
  m.def("run_zero_shot",
        [](const QAModel& model, const std::vector<QARecord>& eval, const py::object& spec,
           const std::string& lang, double null_threshold) {
          return RunZeroShot(model, eval, MakeRunOptions("zero_shot", spec, lang, null_threshold));
        },
        py::arg("model"), py::arg("eval"), spec_arg, lang_arg, null_arg);
  m.def("run_few_shot",
        [](const TrainableQAModel& model, const std::vector<QARecord>& train,
           const std::vector<QARecord>& eval, const TrainConfig& config, const py::object& spec,
           const std::string& lang, double null_threshold) {
          return RunFewShot(model, train, eval, config,
                            MakeRunOptions("few_shot", spec, lang, null_threshold));
        },
        py::arg("model"), py::arg("train"), py::arg("eval"), py::arg("config") = TrainConfig{},
        spec_arg, lang_arg, null_arg);
  m.def("run_further_pretrain",
        [](const TrainableQAModel& model, const std::vector<std::string>& corpus,
           const std::vector<QARecord>& train, const std::vector<QARecord>& eval,
           const TrainConfig& config, const py::object& spec, const std::string& lang,
           double null_threshold) {
          return RunFurtherPretrain(model, corpus, train, eval, config,
                                    MakeRunOptions("further_pretrain", spec, lang, null_threshold));
        },
        py::arg("model"), py::arg("unlabeled_corpus"), py::arg("train"), py::arg("eval"),
        py::arg("config") = TrainConfig{}, spec_arg, lang_arg, null_arg);
  m.def("run_joint_mlm_qa",
        [](const TrainableQAModel& model, const std::vector<std::string>& corpus,
           const std::vector<QARecord>& train, const std::vector<QARecord>& eval,
           const TrainConfig& config, const py::object& spec, const std::string& lang,
           double null_threshold) {
          return RunJointMlmQa(model, corpus, train, eval, config,
                               MakeRunOptions("joint_mlm_qa", spec, lang, null_threshold));
        },
        py::arg("model"), py::arg("unlabeled_corpus"), py::arg("train"), py::arg("eval"),
        py::arg("config") = TrainConfig{}, spec_arg, lang_arg, null_arg);
  m.def("run_tri_training",
        [](py::function factory, const std::vector<QARecord>& labeled,
           const std::vector<UnlabeledExample>& unlabeled, const std::vector<QARecord>& eval,
           const TrainConfig& config, std::size_t rounds, bool adopt_no_answer,
           const py::object& spec, const std::string& lang, double null_threshold) {
          return RunTriTraining(WrapFactory(std::move(factory)), labeled, unlabeled, eval, config,
                                {rounds, adopt_no_answer},
                                MakeRunOptions("tri_training", spec, lang, null_threshold));
        },
        py::arg("factory"), py::arg("labeled"), py::arg("unlabeled"), py::arg("eval"),
        py::arg("config") = TrainConfig{}, py::arg("rounds") = 1,
        py::arg("adopt_no_answer") = true, spec_arg, lang_arg, null_arg);
  m.def("run_cross_lingual",
        [](const TrainableQAModel& model, const std::vector<QARecord>& source_train,
           const std::vector<QARecord>& target_eval, const std::string& mode,
           const std::vector<std::string>& target_unlabeled, const TrainConfig& config,
           const py::object& spec, const std::string& lang, double null_threshold) {
          if (mode != "simple" && mode != "mlm") {
            throw ValidationError("cross-lingual mode must be 'simple' or 'mlm', got '" + mode + "'");
          }
          const auto m = mode == "mlm" ? CrossLingualMode::kMlm : CrossLingualMode::kSimple;
          const char* kind = mode == "mlm" ? "xling_mlm" : "xling_simple";
          return RunCrossLingual(model, source_train, target_eval, m, target_unlabeled, config,
                                 MakeRunOptions(kind, spec, lang, null_threshold));
        },
        py::arg("model"), py::arg("source_train"), py::arg("target_eval"),
        py::arg("mode") = "simple", py::arg("target_unlabeled") = std::vector<std::string>{},
        py::arg("config") = TrainConfig{}, spec_arg, lang_arg, null_arg);
  m.def("run_prompt_baseline",
        [](const PromptModel& model, const std::vector<QARecord>& eval, const py::object& spec,
           const std::string& lang, double null_threshold) {
          return RunPromptBaseline(model, eval,
                                   MakeRunOptions("prompt_baseline", spec, lang, null_threshold));
        },
        py::arg("model"), py::arg("eval"), spec_arg, lang_arg, null_arg);
}
