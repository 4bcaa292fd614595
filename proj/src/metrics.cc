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

#include "eventqa/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "eventqa/errors.h"
#include "eventqa/utf8.h"

namespace eventqa {
namespace {

double TokenF1(const std::vector<std::string>& pred,
               const std::vector<std::string>& gold) {
  if (pred.empty() || gold.empty()) return pred.empty() && gold.empty() ? 1.0 : 0.0;
  std::map<std::string, int> counts;
  for (const auto& t : gold) ++counts[t];
  std::size_t common = 0;
  for (const auto& t : pred) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / pred.size();
  const double recall = static_cast<double>(common) / gold.size();
  return 2.0 * precision * recall / (precision + recall);
}

std::vector<std::string> GoldTexts(const QARecord& r) {
  std::vector<std::string> golds;
  for (const auto& a : r.answers) golds.push_back(a.text);
  return golds;
}

struct Accumulator {
  double f1 = 0.0;
  double em = 0.0;
  std::size_t n = 0;

  GroupScore Finish() const {
    GroupScore g;
    g.n = n;
    if (n > 0) {
      g.f1 = 100.0 * f1 / n;
      g.exact_match = 100.0 * em / n;
    }
    return g;
  }
};

std::vector<const Prediction*> MatchPredictions(
    const std::vector<Prediction>& predictions,
    const std::vector<QARecord>& records) {
  std::unordered_map<std::string, const Prediction*> by_id;
  std::vector<std::string> duplicates;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.record_id, &p).second) duplicates.push_back(p.record_id);
  }
  std::vector<const Prediction*> matched;
  std::vector<std::string> missing;
  std::set<std::string> record_ids;
  for (const auto& r : records) {
    record_ids.insert(r.id);
    auto it = by_id.find(r.id);
    if (it == by_id.end()) {
      missing.push_back(r.id);
      matched.push_back(nullptr);
    } else {
      matched.push_back(it->second);
    }
  }
  std::vector<std::string> unknown;
  for (const auto& p : predictions) {
    if (!record_ids.count(p.record_id)) unknown.push_back(p.record_id);
  }
  if (!duplicates.empty() || !missing.empty() || !unknown.empty()) {
    std::string msg = "prediction/record mismatch;";
    auto list = [&msg](const char* what, const std::vector<std::string>& ids) {
      if (ids.empty()) return;
      msg += std::string(" ") + what + ":";
      for (const auto& id : ids) msg += " " + id;
      msg += ";";
    };
    list("missing", missing);
    list("duplicate", duplicates);
    list("unknown", unknown);
    throw ValidationError(msg);
  }
  return matched;
}

// Record indices sorted by id, so that floating point sums do not depend on
// the caller's ordering.
std::vector<std::size_t> CanonicalOrder(const std::vector<QARecord>& records) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].id < records[b].id;
  });
  return order;
}

std::vector<LengthBucket> BucketsFromScores(
    const std::vector<QARecord>& records, const std::vector<double>& f1,
    const std::vector<double>& em, const std::vector<std::size_t>& edges) {
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] <= edges[i - 1]) {
      throw ValidationError("bucket edges must be strictly increasing");
    }
  }
  std::vector<Accumulator> acc(edges.size() + 1);
  for (std::size_t i : CanonicalOrder(records)) {
    const std::size_t words = utf8::CountWords(records[i].context);
    const std::size_t b = static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), words) - edges.begin());
    acc[b].f1 += f1[i];
    acc[b].em += em[i];
    ++acc[b].n;
  }
  std::vector<LengthBucket> out;
  for (std::size_t b = 0; b < acc.size(); ++b) {
    if (acc[b].n == 0) continue;
    LengthBucket bucket;
    bucket.lower = b == 0 ? 0 : edges[b - 1];
    if (b < edges.size()) bucket.upper = edges[b];
    bucket.score = acc[b].Finish();
    out.push_back(bucket);
  }
  return out;
}

void ScoreAll(const std::vector<Prediction>& predictions,
              const std::vector<QARecord>& records, const EvaluateOptions& opts,
              std::vector<double>& f1, std::vector<double>& em) {
  const auto matched = MatchPredictions(predictions, records);
  f1.resize(records.size());
  em.resize(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto golds = GoldTexts(records[i]);
    f1[i] = SpanF1(matched[i]->text, golds, opts.language, opts.normalization);
    em[i] = ExactMatch(matched[i]->text, golds, opts.language, opts.normalization);
  }
}

}  // namespace

NormalizationOptions NormalizationOptions::WithoutArticles() {
  NormalizationOptions o;
  for (auto& [lang, list] : o.articles) list.clear();
  return o;
}

std::vector<std::string> Normalize(const std::string& text, Language lang,
                                   const NormalizationOptions& opts) {
  std::u32string cleaned;
  for (char32_t c : utf8::Decode(text)) {
    if (utf8::IsPunct(c)) continue;
    cleaned.push_back(utf8::FoldCase(c));
  }
  static const std::vector<std::string> kNone;
  auto it = opts.articles.find(lang);
  const auto& articles = it == opts.articles.end() ? kNone : it->second;
  std::vector<std::string> tokens;
  for (const auto& w : utf8::SplitWords(cleaned)) {
    std::string tok = utf8::Encode(
        std::u32string_view(cleaned).substr(w.start, w.end - w.start));
    if (std::find(articles.begin(), articles.end(), tok) != articles.end()) continue;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::string NormalizeAnswer(const std::string& text, Language lang,
                            const NormalizationOptions& opts) {
  std::string out;
  for (const auto& t : Normalize(text, lang, opts)) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

double SpanF1(const std::string& prediction,
              const std::vector<std::string>& golds, Language lang,
              const NormalizationOptions& opts) {
  const auto pred = Normalize(prediction, lang, opts);
  if (golds.empty()) return pred.empty() ? 1.0 : 0.0;
  double best = 0.0;
  for (const auto& g : golds) {
    best = std::max(best, TokenF1(pred, Normalize(g, lang, opts)));
  }
  return best;
}

double ExactMatch(const std::string& prediction,
                  const std::vector<std::string>& golds, Language lang,
                  const NormalizationOptions& opts) {
  const auto pred = Normalize(prediction, lang, opts);
  if (golds.empty()) return pred.empty() ? 1.0 : 0.0;
  for (const auto& g : golds) {
    if (Normalize(g, lang, opts) == pred) return 1.0;
  }
  return 0.0;
}

std::string LengthBucket::label() const {
  return "[" + std::to_string(lower) + "," +
         (upper ? std::to_string(*upper) : std::string("inf")) + ")";
}

std::vector<double> PerRecordF1(const std::vector<Prediction>& predictions,
                                const std::vector<QARecord>& records,
                                const EvaluateOptions& opts) {
  std::vector<double> f1, em;
  ScoreAll(predictions, records, opts, f1, em);
  return f1;
}

MetricsReport Evaluate(const std::vector<Prediction>& predictions,
                       const std::vector<QARecord>& records,
                       const EvaluateOptions& opts) {
  std::vector<double> f1, em;
  ScoreAll(predictions, records, opts, f1, em);

  Accumulator total;
  std::map<std::string, Accumulator> per_attr;
  for (std::size_t i : CanonicalOrder(records)) {
    total.f1 += f1[i];
    total.em += em[i];
    ++total.n;
    auto& a = per_attr[records[i].attribute];
    a.f1 += f1[i];
    a.em += em[i];
    ++a.n;
  }
  MetricsReport report;
  const GroupScore overall = total.Finish();
  report.f1 = overall.f1;
  report.exact_match = overall.exact_match;
  report.n = overall.n;
  for (const auto& [attr, acc] : per_attr) report.per_attribute[attr] = acc.Finish();
  const auto edges = opts.bucket_edges ? *opts.bucket_edges : QuintileEdges(records);
  report.per_length_bucket = BucketsFromScores(records, f1, em, edges);
  return report;
}

std::vector<LengthBucket> LengthBuckets(
    const std::vector<QARecord>& records,
    const std::vector<Prediction>& predictions,
    const std::vector<std::size_t>& edges, const EvaluateOptions& opts) {
  std::vector<double> f1, em;
  ScoreAll(predictions, records, opts, f1, em);
  return BucketsFromScores(records, f1, em, edges);
}

std::vector<std::size_t> QuintileEdges(const std::vector<QARecord>& records) {
  std::vector<std::size_t> counts;
  counts.reserve(records.size());
  for (const auto& r : records) counts.push_back(utf8::CountWords(r.context));
  std::sort(counts.begin(), counts.end());
  std::vector<std::size_t> edges;
  if (counts.empty()) return edges;
  for (int q = 1; q <= 4; ++q) {
    const std::size_t idx = counts.size() * q / 5;
    const std::size_t edge = counts[std::min(idx, counts.size() - 1)];
    if (edge == 0) continue;
    if (edges.empty() || edge > edges.back()) edges.push_back(edge);
  }
  return edges;
}

double PairwiseIaa(const std::vector<AdDocument>& annotator_a,
                   const std::vector<AdDocument>& annotator_b,
                   const NormalizationOptions& opts) {
  std::map<std::string, const AdDocument*> a_by_id, b_by_id;
  for (const auto& ad : annotator_a) a_by_id[ad.id] = &ad;
  for (const auto& ad : annotator_b) b_by_id[ad.id] = &ad;
  if (a_by_id.size() != annotator_a.size() || b_by_id.size() != annotator_b.size()) {
    throw ValidationError("duplicate ad ids in annotation set");
  }
  std::vector<std::string> mismatched;
  for (const auto& [id, ad] : a_by_id) {
    if (!b_by_id.count(id)) mismatched.push_back(id);
  }
  for (const auto& [id, ad] : b_by_id) {
    if (!a_by_id.count(id)) mismatched.push_back(id);
  }
  if (!mismatched.empty()) {
    std::string msg = "annotator ad ids differ:";
    for (const auto& id : mismatched) msg += " " + id;
    throw ValidationError(msg);
  }

  using Spans = std::map<std::string, std::vector<const AttributeAnnotation*>>;
  auto group = [](const AdDocument& ad) {
    Spans s;
    for (const auto& ann : ad.annotations) s[ann.attribute].push_back(&ann);
    for (auto& [attr, v] : s) {
      std::stable_sort(v.begin(), v.end(), [](auto* x, auto* y) {
        return x->char_start < y->char_start;
      });
    }
    return s;
  };
  // Scores every span of `pred` against the other side's spans for the same
  // attribute; returns (sum, count).
  auto direction = [&opts](const Spans& pred, const Spans& gold, Language lang) {
    std::pair<double, std::size_t> acc{0.0, 0};
    for (const auto& [attr, spans] : pred) {
      std::vector<std::string> golds;
      if (auto it = gold.find(attr); it != gold.end()) {
        for (const auto* ann : it->second) golds.push_back(ann->span_text);
      }
      for (const auto* ann : spans) {
        acc.first += golds.empty() ? 0.0 : SpanF1(ann->span_text, golds, lang, opts);
        ++acc.second;
      }
    }
    return acc;
  };

  double ab_sum = 0.0, ba_sum = 0.0;
  std::size_t ab_n = 0, ba_n = 0;
  for (const auto& [id, ad_a] : a_by_id) {
    const Spans sa = group(*ad_a);
    const Spans sb = group(*b_by_id[id]);
    const auto [s1, n1] = direction(sa, sb, ad_a->language);
    const auto [s2, n2] = direction(sb, sa, ad_a->language);
    ab_sum += s1;
    ab_n += n1;
    ba_sum += s2;
    ba_n += n2;
  }
  if (ab_n == 0 && ba_n == 0) return 100.0;
  const double ab = ab_n ? ab_sum / ab_n : 0.0;
  const double ba = ba_n ? ba_sum / ba_n : 0.0;
  return 100.0 * 0.5 * (ab + ba);
}

namespace {

nlohmann::ordered_json GroupJson(const GroupScore& g) {
  return {{"f1", g.f1}, {"exact_match", g.exact_match}, {"n", g.n}};
}

GroupScore GroupFromJson(const nlohmann::json& j) {
  GroupScore g;
  g.f1 = j.at("f1").get<double>();
  g.exact_match = j.at("exact_match").get<double>();
  g.n = j.at("n").get<std::size_t>();
  return g;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::string MetricsToJson(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["f1"] = report.f1;
  j["exact_match"] = report.exact_match;
  j["n"] = report.n;
  nlohmann::ordered_json attrs = nlohmann::ordered_json::object();
  for (const auto& [attr, g] : report.per_attribute) attrs[attr] = GroupJson(g);
  j["per_attribute"] = std::move(attrs);
  nlohmann::ordered_json buckets = nlohmann::ordered_json::array();
  for (const auto& b : report.per_length_bucket) {
    nlohmann::ordered_json bj = GroupJson(b.score);
    bj["bucket"] = b.label();
    bj["lower"] = b.lower;
    bj["upper"] = b.upper ? nlohmann::ordered_json(*b.upper) : nlohmann::ordered_json();
    buckets.push_back(std::move(bj));
  }
  j["per_length_bucket"] = std::move(buckets);
  return j.dump(2) + "\n";
}

MetricsReport MetricsFromJson(const std::string& json_text) {
  MetricsReport r;
  try {
    const auto j = nlohmann::json::parse(json_text);
    r.f1 = j.at("f1").get<double>();
    r.exact_match = j.at("exact_match").get<double>();
    r.n = j.at("n").get<std::size_t>();
    for (const auto& [attr, g] : j.at("per_attribute").items()) {
      r.per_attribute[attr] = GroupFromJson(g);
    }
    for (const auto& bj : j.at("per_length_bucket")) {
      LengthBucket b;
      b.score = GroupFromJson(bj);
      b.lower = bj.at("lower").get<std::size_t>();
      if (!bj.at("upper").is_null()) b.upper = bj.at("upper").get<std::size_t>();
      r.per_length_bucket.push_back(b);
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("metrics JSON: ") + e.what());
  }
  return r;
}

std::string PerAttributeTsv(const MetricsReport& report) {
  std::string out = "attribute\tf1\texact_match\tn\n";
  for (const auto& [attr, g] : report.per_attribute) {
    out += attr + "\t" + FormatDouble(g.f1) + "\t" + FormatDouble(g.exact_match) +
           "\t" + std::to_string(g.n) + "\n";
  }
  return out;
}

}  // namespace eventqa
