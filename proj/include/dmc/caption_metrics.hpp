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
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dmc/text.hpp"

namespace dmc {

inline constexpr std::size_t kMaxNgramOrder = 4;

// ---------------------------------------------------------------------------
// BLEU

/// Sentence BLEU of orders 1..n: geometric mean of clipped n-gram precisions
/// times the brevity penalty against the closest reference length (shorter
/// wins ties). With `smoothing`, an order with no matches contributes
/// 1 / (total + 1) instead of zeroing the score.
double BleuN(const TokenSequence& candidate, std::span<const TokenSequence> references,
             std::size_t n, bool smoothing = false);

/// Accumulates clipped counts over many sentence pairs for corpus BLEU.
class BleuAccumulator {
 public:
  void Add(const TokenSequence& candidate, std::span<const TokenSequence> references);
  double Score(std::size_t n) const;
  std::size_t pairs() const { return pairs_; }

 private:
  std::array<long long, kMaxNgramOrder> matched_{};
  std::array<long long, kMaxNgramOrder> total_{};
  long long candidate_length_ = 0;
  long long reference_length_ = 0;
  std::size_t pairs_ = 0;
};

// ---------------------------------------------------------------------------
// ROUGE-L

inline constexpr double kRougeBeta = 1.2;

std::size_t LongestCommonSubsequence(const TokenSequence& a, const TokenSequence& b);

/// LCS F-measure with beta = 1.2, maximized over references.
double RougeL(const TokenSequence& candidate, std::span<const TokenSequence> references);

// ---------------------------------------------------------------------------
// CIDEr-D

inline constexpr double kCiderSigma = 6.0;

/// Document frequencies of n-grams (orders 1..4) over reference groups.
class CorpusStats {
 public:
  std::size_t document_count() const { return document_count_; }
  /// 0 when the n-gram never occurs. `ngram` is space-joined.
  int DocumentFrequency(std::size_t order, const std::string& ngram) const;

 private:
  friend CorpusStats BuildCorpusStats(std::span<const std::vector<TokenSequence>>);
  std::array<std::unordered_map<std::string, int>, kMaxNgramOrder> df_;
  std::size_t document_count_ = 0;
};

/// One document per reference group; an n-gram counts once per document.
CorpusStats BuildCorpusStats(std::span<const std::vector<TokenSequence>> reference_groups);

/// CIDEr-D with clipping and the gaussian length penalty (sigma = 6),
/// averaged over n = 1..4 and references, scaled by 10. Throws
/// ValidationError when `stats` has no documents.
double Cider(const TokenSequence& candidate, std::span<const TokenSequence> references,
             const CorpusStats& stats);

// ---------------------------------------------------------------------------
// METEOR without synonym tables

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
};

struct MeteorAlignment {
  std::size_t matches = 0;
  std::size_t exact_matches = 0;
  std::size_t chunks = 0;
  /// (candidate index, reference index), sorted by candidate index.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Exact matching first, then Porter-stem matching; among alignments with the
/// most matches, one with the fewest chunks.
MeteorAlignment AlignForMeteor(const TokenSequence& candidate, const TokenSequence& reference);

double MeteorLite(const TokenSequence& candidate, std::span<const TokenSequence> references,
                  const MeteorParams& params = {});

// ---------------------------------------------------------------------------
// Pluggable pairwise scoring

enum class CaptionMetric { kBleu1, kBleu4, kRougeL, kCider, kMeteor };

inline constexpr std::array<CaptionMetric, 5> kAllCaptionMetrics = {
    CaptionMetric::kCider, CaptionMetric::kMeteor, CaptionMetric::kRougeL,
    CaptionMetric::kBleu1, CaptionMetric::kBleu4};

/// Report key: "cider", "meteor", "rouge_l", "bleu1", "bleu4".
const char* CaptionMetricName(CaptionMetric metric);
CaptionMetric ParseCaptionMetric(const std::string& name);

/// Scores a candidate caption against one reference caption.
using PairScorer = std::function<double(const TokenSequence& candidate,
                                        const TokenSequence& reference)>;

/// `stats` is required for kCider and must outlive the scorer.
/// `bleu_smoothing` applies to the BLEU metrics.
PairScorer MakePairScorer(CaptionMetric metric, const CorpusStats* stats = nullptr,
                          bool bleu_smoothing = true);

}  // namespace dmc
