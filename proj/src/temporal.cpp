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

#include "dmc/temporal.hpp"

#include <algorithm>
#include <cmath>

#include "dmc/error.hpp"
#include "dmc/text.hpp"

namespace dmc {

namespace {

struct Overlap {
  std::int64_t intersection;
  std::int64_t union_length;
};

Overlap OverlapOf(const TimedSegment& a, const TimedSegment& b) {
  const std::int64_t as = a.start.centiseconds(), ae = a.end.centiseconds();
  const std::int64_t bs = b.start.centiseconds(), be = b.end.centiseconds();
  const std::int64_t inter = std::max<std::int64_t>(0, std::min(ae, be) - std::max(as, bs));
  const std::int64_t uni = (ae - as) + (be - bs) - inter;
  return {inter, uni};
}

double Ratio(const Overlap& o) {
  if (o.union_length <= 0) return 0.0;
  return static_cast<double>(o.intersection) / static_cast<double>(o.union_length);
}

}  // namespace

double SegmentIou(const TimedSegment& a, const TimedSegment& b) { return Ratio(OverlapOf(a, b)); }

MatchResult GreedyMatch(const DenseAnnotation& preds, const DenseAnnotation& refs) {
  struct Candidate {
    std::size_t pred, ref;
    Overlap overlap;
  };
  std::vector<Candidate> candidates;
  for (std::size_t p = 0; p < preds.size(); ++p) {
    for (std::size_t r = 0; r < refs.size(); ++r) {
      const Overlap o = OverlapOf(preds.segments[p], refs.segments[r]);
      if (o.intersection > 0 && o.union_length > 0) candidates.push_back({p, r, o});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    const __int128 lhs = static_cast<__int128>(x.overlap.intersection) * y.overlap.union_length;
    const __int128 rhs = static_cast<__int128>(y.overlap.intersection) * x.overlap.union_length;
    if (lhs != rhs) return lhs > rhs;
    if (x.ref != y.ref) return x.ref < y.ref;
    return x.pred < y.pred;
  });

  MatchResult result;
  std::vector<bool> pred_used(preds.size(), false), ref_used(refs.size(), false);
  for (const auto& c : candidates) {
    if (pred_used[c.pred] || ref_used[c.ref]) continue;
    pred_used[c.pred] = true;
    ref_used[c.ref] = true;
    result.pairs.push_back({c.pred, c.ref, Ratio(c.overlap)});
  }
  for (std::size_t p = 0; p < preds.size(); ++p) {
    if (!pred_used[p]) result.unmatched_preds.push_back(p);
  }
  for (std::size_t r = 0; r < refs.size(); ++r) {
    if (!ref_used[r]) result.unmatched_refs.push_back(r);
  }
  return result;
}

LocalizationScores TiouF1(const MatchResult& match, std::size_t num_preds, std::size_t num_refs,
                          std::span<const double> thresholds) {
  LocalizationScores out;
  out.f1_per_threshold.assign(thresholds.size(), 0.0);
  if (num_preds == 0 || num_refs == 0) {
    out.degenerate = true;
    return out;
  }
  if (!match.pairs.empty()) {
    double sum = 0.0;
    for (const auto& p : match.pairs) sum += p.iou;
    out.tiou_pct = 100.0 * sum / static_cast<double>(match.pairs.size());
  }
  double f1_sum = 0.0;
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    std::size_t tp = 0;
    for (const auto& p : match.pairs) {
      if (p.iou >= thresholds[t]) ++tp;
    }
    if (tp == 0) continue;
    const double precision = static_cast<double>(tp) / static_cast<double>(num_preds);
    const double recall = static_cast<double>(tp) / static_cast<double>(num_refs);
    out.f1_per_threshold[t] = 2.0 * precision * recall / (precision + recall);
    f1_sum += out.f1_per_threshold[t];
  }
  if (!thresholds.empty()) out.f1_pct = 100.0 * f1_sum / static_cast<double>(thresholds.size());
  return out;
}

std::map<CaptionMetric, double> ThresholdedCaptionEval(const DenseAnnotation& preds,
                                                       const DenseAnnotation& refs,
                                                       const CaptionScorerSet& scorers,
                                                       std::span<const double> thresholds) {
  return ThresholdedCaptionEval(preds, refs, GreedyMatch(preds, refs), scorers, thresholds);
}

std::map<CaptionMetric, double> ThresholdedCaptionEval(const DenseAnnotation& preds,
                                                       const DenseAnnotation& refs,
                                                       const MatchResult& match,
                                                       const CaptionScorerSet& scorers,
                                                       std::span<const double> thresholds) {
  std::map<CaptionMetric, double> out;
  for (CaptionMetric m : scorers.metrics) out[m] = 0.0;
  if (thresholds.empty() || match.pairs.empty()) return out;

  // Score every matched pair once; thresholds only select subsets.
  std::vector<TokenSequence> pred_tokens, ref_tokens;
  for (const auto& p : match.pairs) {
    pred_tokens.push_back(Tokenize(preds.segments[p.pred].caption));
    ref_tokens.push_back(Tokenize(refs.segments[p.ref].caption));
  }
  for (CaptionMetric metric : scorers.metrics) {
    const PairScorer scorer = MakePairScorer(metric, scorers.stats, scorers.bleu_smoothing);
    std::vector<double> pair_scores(match.pairs.size());
    for (std::size_t k = 0; k < match.pairs.size(); ++k) {
      pair_scores[k] = scorer(pred_tokens[k], ref_tokens[k]);
    }
    double across = 0.0;
    for (double tau : thresholds) {
      double sum = 0.0;
      std::size_t kept = 0;
      for (std::size_t k = 0; k < match.pairs.size(); ++k) {
        if (match.pairs[k].iou >= tau) {
          sum += pair_scores[k];
          ++kept;
        }
      }
      if (kept > 0) across += sum / static_cast<double>(kept);
    }
    out[metric] = 100.0 * across / static_cast<double>(thresholds.size());
  }
  return out;
}

DenseAnnotation AggregateFrameLabels(std::span<const std::string> labels, double frame_rate_hz,
                                     std::string sequence_id) {
  if (labels.empty()) throw ValidationError("frame label list is empty");
  if (!(frame_rate_hz > 0.0) || !std::isfinite(frame_rate_hz)) {
    throw ValidationError("frame rate must be positive");
  }
  auto boundary = [frame_rate_hz](std::size_t frame) {
    return Timestamp(std::llround(static_cast<double>(frame) * 100.0 / frame_rate_hz));
  };
  DenseAnnotation out;
  out.sequence_id = std::move(sequence_id);
  out.duration = boundary(labels.size());
  std::size_t run_start = 0;
  for (std::size_t i = 1; i <= labels.size(); ++i) {
    if (i < labels.size() && labels[i] == labels[run_start]) continue;
    TimedSegment seg{boundary(run_start), boundary(i), labels[run_start]};
    if (!(seg.start < seg.end)) {
      throw ValidationError("label run at frame " + std::to_string(run_start) +
                            " is shorter than one centisecond at " +
                            std::to_string(frame_rate_hz) + " Hz");
    }
    out.segments.push_back(std::move(seg));
    run_start = i;
  }
  return out;
}

}  // namespace dmc
