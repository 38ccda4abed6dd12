// Copyright 2026 The DMC Authors
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

#include "dmc/report.hpp"

#include <set>
#include <unordered_map>

#include "dmc/error.hpp"
#include "dmc/parallel.hpp"
#include "dmc/temporal.hpp"
#include "dmc/text.hpp"

namespace dmc {

void EvalConfig::Validate() const {
  if (iou_thresholds.empty()) throw ValidationError("iou_thresholds must not be empty");
  for (std::size_t i = 0; i < iou_thresholds.size(); ++i) {
    const double t = iou_thresholds[i];
    if (!(t > 0.0 && t <= 1.0)) {
      throw ValidationError("iou threshold " + std::to_string(t) + " outside (0, 1]");
    }
    if (i > 0 && !(iou_thresholds[i - 1] < t)) {
      throw ValidationError("iou_thresholds must be strictly ascending");
    }
  }
  std::set<CaptionMetric> seen;
  for (CaptionMetric m : metrics) {
    if (!seen.insert(m).second) {
      throw ValidationError(std::string("duplicate metric ") + CaptionMetricName(m));
    }
  }
}

nlohmann::json EvalConfig::ToJson() const {
  nlohmann::json names = nlohmann::json::array();
  for (CaptionMetric m : metrics) names.push_back(CaptionMetricName(m));
  return {{"iou_thresholds", iou_thresholds},
          {"metrics", names},
          {"soda_iou_weighted", soda_iou_weighted},
          {"bleu_smoothing", bleu_smoothing}};
}

EvalConfig EvalConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("eval config must be a JSON object");
  EvalConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "iou_thresholds") {
      if (!value.is_array()) throw ValidationError("iou_thresholds must be an array");
      c.iou_thresholds.clear();
      for (const auto& v : value) {
        if (!v.is_number()) throw ValidationError("iou_thresholds entries must be numbers");
        c.iou_thresholds.push_back(v.get<double>());
      }
    } else if (key == "metrics") {
      if (!value.is_array()) throw ValidationError("metrics must be an array");
      c.metrics.clear();
      for (const auto& v : value) {
        if (!v.is_string()) throw ValidationError("metrics entries must be strings");
        c.metrics.push_back(ParseCaptionMetric(v.get<std::string>()));
      }
    } else if (key == "soda_iou_weighted" || key == "bleu_smoothing") {
      if (!value.is_boolean()) throw ValidationError(key + " must be a boolean");
      (key == "soda_iou_weighted" ? c.soda_iou_weighted : c.bleu_smoothing) = value.get<bool>();
    } else {
      throw ValidationError("unknown eval config key '" + key + "'");
    }
  }
  c.Validate();
  return c;
}

namespace {

struct PooledPair {
  double iou;
  TokenSequence pred;
  TokenSequence ref;
  std::map<CaptionMetric, double> scores;
};

struct SequenceWork {
  SequenceReport report;
  std::vector<PooledPair> pairs;
};

SodaPct ToPct(const SodaResult& r) { return {100.0 * r.precision, 100.0 * r.recall, 100.0 * r.f1}; }

void CheckUniqueAndValid(const std::vector<DenseAnnotation>& set, const char* name) {
  std::set<std::string> ids;
  std::vector<std::string> problems;
  for (const auto& a : set) {
    if (!ids.insert(a.sequence_id).second) {
      throw ValidationError(std::string("duplicate id '") + a.sequence_id + "' in " + name);
    }
    for (const auto& v : ValidateAnnotation(a, false)) {
      problems.push_back(a.sequence_id + ": " + v.message);
    }
  }
  if (!problems.empty()) {
    std::string msg = std::string("invalid ") + name + " annotations: " + problems.front();
    if (problems.size() > 1) msg += " (and " + std::to_string(problems.size() - 1) + " more)";
    throw ValidationError(msg);
  }
}

SequenceWork EvaluateSequence(const DenseAnnotation* pred_or_null, const DenseAnnotation& ref,
                              const EvalConfig& config, const CorpusStats& stats,
                              const ExternalScoreTable* external) {
  SequenceWork work;
  SequenceReport& rep = work.report;
  rep.id = ref.sequence_id;
  DenseAnnotation empty{ref.sequence_id, ref.duration, {}};
  const DenseAnnotation& pred = pred_or_null ? *pred_or_null : empty;
  rep.has_prediction = pred_or_null != nullptr;
  if (!rep.has_prediction) rep.warnings.push_back("no prediction for reference id");
  rep.num_preds = pred.size();
  rep.num_refs = ref.size();

  const MatchResult match = GreedyMatch(pred, ref);
  const LocalizationScores loc = TiouF1(match, pred.size(), ref.size(), config.iou_thresholds);
  if (loc.degenerate && rep.has_prediction) {
    rep.warnings.push_back(pred.empty() ? "prediction has no segments"
                                        : "reference has no segments");
  }
  rep.tiou_pct = loc.tiou_pct;
  rep.f1_pct = loc.f1_pct;
  for (double f : loc.f1_per_threshold) rep.f1_per_threshold.push_back(100.0 * f);

  const CaptionScorerSet scorers{config.metrics, &stats, config.bleu_smoothing};
  rep.caption = ThresholdedCaptionEval(pred, ref, match, scorers, config.iou_thresholds);

  for (const auto& p : match.pairs) {
    PooledPair pooled{p.iou, Tokenize(pred.segments[p.pred].caption),
                      Tokenize(ref.segments[p.ref].caption), {}};
    work.pairs.push_back(std::move(pooled));
  }
  for (CaptionMetric m : config.metrics) {
    const PairScorer scorer = MakePairScorer(m, &stats, config.bleu_smoothing);
    for (auto& pp : work.pairs) pp.scores[m] = scorer(pp.pred, pp.ref);
  }

  rep.soda = ToPct(SodaScore(ref, pred, MakePairScorer(CaptionMetric::kMeteor),
                             config.soda_iou_weighted));
  if (external != nullptr) {
    if (pred.empty() || ref.empty()) {
      rep.soda_external = SodaPct{};
    } else {
      rep.soda_external = ToPct(SodaFromMatrix(external->MatrixFor(ref, pred)));
    }
  }
  return work;
}

nlohmann::json SodaJson(const SodaPct& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

nlohmann::json CaptionJson(const std::map<CaptionMetric, double>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [metric, value] : m) j[CaptionMetricName(metric)] = value;
  return j;
}

}  // namespace

MetricReport Evaluate(const std::vector<DenseAnnotation>& preds,
                      const std::vector<DenseAnnotation>& refs, const EvalConfig& config,
                      const ExternalScoreTable* external_scores) {
  config.Validate();
  CheckUniqueAndValid(refs, "reference");
  CheckUniqueAndValid(preds, "prediction");

  MetricReport report;
  report.config = config;

  std::unordered_map<std::string, std::size_t> pred_index;
  for (std::size_t i = 0; i < preds.size(); ++i) pred_index.emplace(preds[i].sequence_id, i);
  std::set<std::string> ref_ids;
  for (const auto& r : refs) ref_ids.insert(r.sequence_id);
  std::size_t overlap = 0;
  for (const auto& p : preds) {
    if (ref_ids.count(p.sequence_id)) {
      ++overlap;
    } else {
      report.warnings.push_back("prediction '" + p.sequence_id + "' has no reference; ignored");
    }
  }
  if (!preds.empty() && overlap == 0) {
    throw ValidationError("predictions and references share no sequence id");
  }

  // Every reference segment is one CIDEr document.
  std::vector<std::vector<TokenSequence>> groups;
  for (const auto& r : refs) {
    for (const auto& s : r.segments) groups.push_back({Tokenize(s.caption)});
  }
  const CorpusStats stats = BuildCorpusStats(groups);
  const bool need_cider =
      std::find(config.metrics.begin(), config.metrics.end(), CaptionMetric::kCider) !=
      config.metrics.end();
  if (need_cider && stats.document_count() == 0) {
    throw ValidationError("references contain no segments; CIDEr is undefined");
  }

  std::vector<SequenceWork> work(refs.size());
  ParallelFor(refs.size(), config.threads, [&](std::size_t i) {
    const auto it = pred_index.find(refs[i].sequence_id);
    const DenseAnnotation* pred = it == pred_index.end() ? nullptr : &preds[it->second];
    work[i] = EvaluateSequence(pred, refs[i], config, stats, external_scores);
  });

  CorpusReport& corpus = report.corpus;
  corpus.sequences = refs.size();
  if (external_scores != nullptr) corpus.soda_external = SodaPct{};
  for (CaptionMetric m : config.metrics) {
    corpus.caption[m] = 0.0;
    corpus.pooled_caption[m] = 0.0;
  }
  for (auto& w : work) {
    const SequenceReport& s = w.report;
    for (const auto& msg : s.warnings) report.warnings.push_back(s.id + ": " + msg);
    corpus.soda.precision += s.soda.precision;
    corpus.soda.recall += s.soda.recall;
    corpus.soda.f1 += s.soda.f1;
    if (corpus.soda_external && s.soda_external) {
      corpus.soda_external->precision += s.soda_external->precision;
      corpus.soda_external->recall += s.soda_external->recall;
      corpus.soda_external->f1 += s.soda_external->f1;
    }
    for (const auto& [m, v] : s.caption) corpus.caption[m] += v;
    corpus.tiou_pct += s.tiou_pct;
    corpus.f1_pct += s.f1_pct;
  }
  if (!work.empty()) {
    const double n = static_cast<double>(work.size());
    corpus.soda = {corpus.soda.precision / n, corpus.soda.recall / n, corpus.soda.f1 / n};
    if (corpus.soda_external) {
      auto& e = *corpus.soda_external;
      e = {e.precision / n, e.recall / n, e.f1 / n};
    }
    for (auto& [m, v] : corpus.caption) v /= n;
    corpus.tiou_pct /= n;
    corpus.f1_pct /= n;
  }

  for (double tau : config.iou_thresholds) {
    for (CaptionMetric m : config.metrics) {
      if (m == CaptionMetric::kBleu1 || m == CaptionMetric::kBleu4) {
        BleuAccumulator acc;
        for (const auto& w : work) {
          for (const auto& p : w.pairs) {
            if (p.iou >= tau) acc.Add(p.pred, std::span(&p.ref, 1));
          }
        }
        if (acc.pairs() > 0) {
          corpus.pooled_caption[m] += acc.Score(m == CaptionMetric::kBleu1 ? 1 : 4);
        }
      } else {
        double sum = 0.0;
        std::size_t kept = 0;
        for (const auto& w : work) {
          for (const auto& p : w.pairs) {
            if (p.iou >= tau) {
              sum += p.scores.at(m);
              ++kept;
            }
          }
        }
        if (kept > 0) corpus.pooled_caption[m] += sum / static_cast<double>(kept);
      }
    }
  }
  for (auto& [m, v] : corpus.pooled_caption) {
    v = 100.0 * v / static_cast<double>(config.iou_thresholds.size());
  }

  report.sequences.reserve(work.size());
  for (auto& w : work) report.sequences.push_back(std::move(w.report));
  return report;
}

MetricReport EvaluateFiles(const std::filesystem::path& preds_path,
                           const std::filesystem::path& refs_path, const EvalConfig& config,
                           const std::optional<std::filesystem::path>& scores_path) {
  const auto refs = ReadAnnotationFile(refs_path);
  const auto preds = ReadAnnotationFile(preds_path);
  std::optional<ExternalScoreTable> table;
  if (scores_path) table = ExternalScoreTable::Load(*scores_path);
  return Evaluate(preds, refs, config, table ? &*table : nullptr);
}

nlohmann::json MetricReport::ToJson() const {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = config.ToJson();
  j["conventions"] = {
      {"corpus_aggregation", "macro mean over reference sequences"},
      {"tiou", "mean IoU over greedily matched pairs with IoU > 0"},
      {"f1", "mean over iou_thresholds of per-threshold F1; a matched pair counts when iou >= threshold"},
      {"caption_metrics",
       "sentence-level pair scores averaged over matched pairs with iou >= threshold, then over thresholds"},
      {"pooled_caption_metrics",
       "pairs pooled over all sequences per threshold; corpus-level BLEU, mean pair score otherwise"},
      {"soda", std::string("order-preserving DP alignment over METEOR-lite scores") +
                   (config.soda_iou_weighted ? " weighted by IoU" : " without IoU weighting")},
      {"soda_external", "same alignment over an externally supplied score matrix"},
      {"scale", "percent; cider is 100 x raw CIDEr-D and can exceed 100"}};

  nlohmann::json c;
  c["sequences"] = corpus.sequences;
  c["soda"] = SodaJson(corpus.soda);
  c["soda_external"] = corpus.soda_external ? SodaJson(*corpus.soda_external) : nlohmann::json();
  c["caption"] = CaptionJson(corpus.caption);
  c["pooled_caption"] = CaptionJson(corpus.pooled_caption);
  c["tiou_pct"] = corpus.tiou_pct;
  c["f1_pct"] = corpus.f1_pct;
  j["corpus"] = std::move(c);

  nlohmann::json seqs = nlohmann::json::array();
  for (const auto& s : sequences) {
    nlohmann::json e;
    e["id"] = s.id;
    e["num_preds"] = s.num_preds;
    e["num_refs"] = s.num_refs;
    e["has_prediction"] = s.has_prediction;
    e["soda"] = SodaJson(s.soda);
    e["soda_external"] = s.soda_external ? SodaJson(*s.soda_external) : nlohmann::json();
    e["caption"] = CaptionJson(s.caption);
    e["tiou_pct"] = s.tiou_pct;
    e["f1_pct"] = s.f1_pct;
    e["f1_per_threshold_pct"] = s.f1_per_threshold;
    e["warnings"] = s.warnings;
    seqs.push_back(std::move(e));
  }
  j["sequences"] = std::move(seqs);
  j["warnings"] = warnings;
  j["similarity"] = similarity ? *similarity : nlohmann::json();
  return j;
}

}  // namespace dmc
