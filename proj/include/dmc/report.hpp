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

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmc/annotation.hpp"
#include "dmc/caption_metrics.hpp"
#include "dmc/soda.hpp"

namespace dmc {

inline constexpr int kReportSchemaVersion = 1;

struct EvalConfig {
  std::vector<double> iou_thresholds = {0.3, 0.5, 0.7, 0.9};
  std::vector<CaptionMetric> metrics = {kAllCaptionMetrics.begin(), kAllCaptionMetrics.end()};
  bool soda_iou_weighted = true;
  bool bleu_smoothing = true;
  /// Not part of the report; results do not depend on it.
  std::size_t threads = 1;

  /// Throws ValidationError on unsorted or out-of-range thresholds.
  void Validate() const;
  nlohmann::json ToJson() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static EvalConfig FromJson(const nlohmann::json& j);
};

struct SodaPct {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct SequenceReport {
  std::string id;
  std::size_t num_preds = 0;
  std::size_t num_refs = 0;
  bool has_prediction = false;
  SodaPct soda;
  std::optional<SodaPct> soda_external;
  std::map<CaptionMetric, double> caption;  // percent
  double tiou_pct = 0.0;
  double f1_pct = 0.0;
  std::vector<double> f1_per_threshold;  // percent
  std::vector<std::string> warnings;
};

struct CorpusReport {
  std::size_t sequences = 0;
  SodaPct soda;
  std::optional<SodaPct> soda_external;
  std::map<CaptionMetric, double> caption;
  double tiou_pct = 0.0;
  double f1_pct = 0.0;
  /// Pairs pooled over all sequences per threshold; corpus BLEU and the mean
  /// pair score for the rest.
  std::map<CaptionMetric, double> pooled_caption;
};

struct MetricReport {
  EvalConfig config;
  CorpusReport corpus;
  std::vector<SequenceReport> sequences;
  std::vector<std::string> warnings;
  /// Filled by the similarity module when embeddings are supplied.
  std::optional<nlohmann::json> similarity;

  nlohmann::json ToJson() const;
};

/// Evaluates predictions against references, matched by sequence id.
/// References without a prediction score zero with a warning; predictions
/// without a reference are ignored with a warning.
/// Throws ValidationError on duplicate ids, invalid annotations, or when a
/// non-empty prediction set shares no id with the references.
MetricReport Evaluate(const std::vector<DenseAnnotation>& preds,
                      const std::vector<DenseAnnotation>& refs, const EvalConfig& config,
                      const ExternalScoreTable* external_scores = nullptr);

MetricReport EvaluateFiles(const std::filesystem::path& preds_path,
                           const std::filesystem::path& refs_path, const EvalConfig& config,
                           const std::optional<std::filesystem::path>& scores_path = std::nullopt);

}  // namespace dmc
