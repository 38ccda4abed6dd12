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

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dmc/annotation.hpp"
#include "dmc/caption_metrics.hpp"

namespace dmc {

inline constexpr std::array<double, 4> kDefaultIouThresholds = {0.3, 0.5, 0.7, 0.9};

/// Temporal IoU of two half-open intervals, from exact integer arithmetic.
double SegmentIou(const TimedSegment& a, const TimedSegment& b);

struct MatchedPair {
  std::size_t pred;
  std::size_t ref;
  double iou;
};

struct MatchResult {
  std::vector<MatchedPair> pairs;  // descending IoU
  std::vector<std::size_t> unmatched_preds;
  std::vector<std::size_t> unmatched_refs;
};

/// Takes the unmatched (pred, ref) pair of highest IoU until no pair with
/// IoU > 0 is left. Ties go to the smaller ref index, then the smaller pred
/// index. IoUs are compared exactly as rationals.
MatchResult GreedyMatch(const DenseAnnotation& preds, const DenseAnnotation& refs);

struct LocalizationScores {
  double tiou_pct = 0.0;
  double f1_pct = 0.0;
  std::vector<double> f1_per_threshold;  // raw, one per threshold
  /// Set when P or R is zero.
  bool degenerate = false;
};

/// tIoU is the mean IoU over matched pairs. F1 is averaged over thresholds;
/// a pair is a true positive at tau when iou >= tau.
LocalizationScores TiouF1(const MatchResult& match, std::size_t num_preds,
                          std::size_t num_refs,
                          std::span<const double> thresholds = kDefaultIouThresholds);

struct CaptionScorerSet {
  std::vector<CaptionMetric> metrics;
  const CorpusStats* stats = nullptr;  // required when metrics include CIDEr
  bool bleu_smoothing = true;
};

/// Per metric: mean pair score over greedy matches with IoU >= tau (0 if
/// none), averaged over thresholds, scaled by 100.
std::map<CaptionMetric, double> ThresholdedCaptionEval(
    const DenseAnnotation& preds, const DenseAnnotation& refs, const CaptionScorerSet& scorers,
    std::span<const double> thresholds = kDefaultIouThresholds);

/// Same as above with a precomputed match.
std::map<CaptionMetric, double> ThresholdedCaptionEval(
    const DenseAnnotation& preds, const DenseAnnotation& refs, const MatchResult& match,
    const CaptionScorerSet& scorers, std::span<const double> thresholds);

/// Run-length encodes per-frame labels; frame i covers [i/fps, (i+1)/fps).
/// Boundaries are rounded to centiseconds. Throws ValidationError on an empty
/// label list, a non-positive frame rate, or a run that rounds to zero length.
DenseAnnotation AggregateFrameLabels(std::span<const std::string> labels, double frame_rate_hz,
                                     std::string sequence_id = {});

}  // namespace dmc
