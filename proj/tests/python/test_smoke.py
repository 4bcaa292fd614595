# Copyright 2026 The EventQA Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import json
import math

import pytest

import eventqa

CONTEXT = "Ran away from Richmond a negro man named Tom, aged about 25."


def ad():
    return eventqa.AdDocument(
        "ad1",
        CONTEXT,
        [
            eventqa.AttributeAnnotation("given_name", "Tom", CONTEXT.index("Tom")),
            eventqa.AttributeAnnotation("ran_from_specified", "Richmond", CONTEXT.index("Richmond")),
        ],
    )


def records():
    recs, report = eventqa.convert_corpus([ad()], eventqa.runaways_question_map())
    assert report["answer_spans"] == 2
    return recs


class WordModel(eventqa.TrainableQAModel):
    """Answers with a fixed word of the context; training shifts the word."""

    def __init__(self, word=0, tag="word"):
        super().__init__()
        self.word = word
        self.tag = tag

    def predict(self, context, question):
        words = context.split()
        if self.word >= len(words):
            return eventqa.SpanPrediction(no_answer_score=1.0)
        start = 0
        for _ in range(self.word):
            start = context.index(" ", start) + 1
        return eventqa.SpanPrediction(words[self.word], start, 2.0, 0.0)

    def fingerprint(self):
        return f"{self.tag}:{self.word}"

    def train(self, records, config):
        return WordModel(self.word + 1, f"{self.tag}+{len(records)}")

    def train_mlm(self, corpus, config):
        return WordModel(self.word, self.tag + "+mlm")

    def train_joint(self, records, corpus, config, schedule):
        return WordModel(self.word + 1, self.tag + "+joint")


def test_metrics():
    assert eventqa.span_f1("the Tom", ["Tom"]) == 1.0
    assert eventqa.span_f1("", []) == 1.0
    assert eventqa.span_f1("", ["Tom"]) == 0.0
    assert eventqa.exact_match("Tom.", ["tom"]) == 1.0
    assert eventqa.normalize_answer("The  Tom!") == "tom"
    assert eventqa.normalize_answer("le chat", "fr") == "le chat"


def test_conversion_and_squad_roundtrip(tmp_path):
    recs = records()
    assert len(recs) == len(eventqa.runaways_question_map())
    answerable = [r for r in recs if not r.is_impossible]
    assert {r.attribute for r in answerable} == {"given_name", "ran_from_specified"}
    path = tmp_path / "data.json"
    eventqa.save_squad(recs, path)
    assert eventqa.load_squad(path) == recs
    doc = json.loads(path.read_text())
    assert doc["version"] == "v2.0"


def test_alignment():
    match, source = eventqa.project_answer("Tom", "Parti de Richmond, Tom, 25 ans", "Tom")
    assert (match.span_text, match.char_start, match.score, source) == ("Tom", 19, 1.0, "translated")
    match, source = eventqa.project_answer("Tom", "Parti de Richmond, Thom, 25 ans", "Tom")
    assert source == "translated"
    assert match.span_text == "Thom,"
    assert match.score >= 0.5
    assert eventqa.similarity("abc", "ABC") == 1.0
    assert eventqa.sweep_kgrams("a b c", "zzzz", 1) is None


def test_translator_subclass():
    class Upper(eventqa.Translator):
        def translate(self, text, src, tgt):
            return text.upper()

    out, report = eventqa.align_records(
        records(), eventqa.runaways_question_map(), Upper(), target_language="fr"
    )
    assert report["kept"] == len(out)
    tom = next(r for r in out if r.attribute == "given_name")
    assert tom.answers[0].text == "TOM"


def test_pseudo_perplexity():
    corpus = eventqa.tokenize_corpus("a b c\nd e\n")
    pp, tokens = eventqa.corpus_pseudo_perplexity(eventqa.UniformScorer(17), corpus)
    assert tokens == 5
    assert abs(pp - 17) < 1e-9

    class Half(eventqa.MaskedScorer):
        def token_nll(self, tokens, i):
            return math.log(2)

    rows = eventqa.compare_models(corpus, [("half", Half()), ("uniform", eventqa.UniformScorer(17))])
    assert [r[0] for r in rows] == ["half", "uniform"]
    assert abs(rows[0][1] - 2) < 1e-9


def test_zero_and_few_shot_with_python_model():
    recs = records()
    zero = eventqa.run_zero_shot(WordModel(), recs)
    assert zero.metrics.n == len(recs)
    assert zero.spec["kind"] == "zero_shot"

    few = eventqa.run_few_shot(WordModel(), recs, recs, spec={"budget": 1})
    assert few.model_fingerprint.startswith("word+")
    assert few.spec["budget"] == 1


def test_tri_training_unanimous_models_adopt_everything():
    recs = records()
    unlabeled = eventqa.strip_answers(recs)
    result = eventqa.run_tri_training(
        lambda: WordModel(), recs, unlabeled, recs, spec={"budget": 1, "unlabeled_corpus_ref": "x"}
    )
    assert len(result.adopted) == len(unlabeled)
    assert result.adopted_per_round == [len(unlabeled)]


def test_registered_python_backend_and_errors():
    eventqa.register_qa_backend("py.word", lambda name: WordModel(tag=name))
    model = eventqa.qa_backend("py.word")
    assert model.fingerprint() == "py.word:0"
    assert "py.word" in eventqa.registered_qa_backends()
    mock = eventqa.qa_backend("mock.first_token")
    assert eventqa.trainable_qa_backend("mock.lexicon").fingerprint()
    assert eventqa.run_zero_shot(mock, records()).metrics.n == len(records())
    with pytest.raises(eventqa.ValidationError):
        eventqa.qa_backend("no.such.backend")
    with pytest.raises(eventqa.Error):
        eventqa.parse_squad("{not json")


def test_sampling_nests():
    recs = []
    for i in range(30):
        recs.append(eventqa.QARecord(f"ad{i}::x", "c", "q?", is_impossible=True,
                                     attribute="x", source_ad_id=f"ad{i}"))
    small = {r.source_ad_id for r in eventqa.sample_budget(recs, 8, 3)}
    large = {r.source_ad_id for r in eventqa.sample_budget(recs, 16, 3)}
    assert len(small) == 8 and small <= large
