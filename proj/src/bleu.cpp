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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "dmc/caption_metrics.hpp"
#include "dmc/error.hpp"

namespace dmc {

namespace {

struct ClippedCounts {
  std::array<long long, kMaxNgramOrder> matched{};
  std::array<long long, kMaxNgramOrder> total{};
  long long candidate_length = 0;
  long long reference_length = 0;
};

// Closest reference length; ties go to the shorter reference.
long long ClosestReferenceLength(std::size_t candidate_length,
                                 std::span<const TokenSequence> references) {
  long long best = -1;
  long long best_diff = 0;
  for (const auto& ref : references) {
    const auto len = static_cast<long long>(ref.size());
    const long long diff = std::llabs(len - static_cast<long long>(candidate_length));
    if (best < 0 || diff < best_diff || (diff == best_diff && len < best)) {
      best = len;
      best_diff = diff;
    }
  }
  return best;
}

ClippedCounts Count(const TokenSequence& candidate, std::span<const TokenSequence> references,
                    std::size_t max_order) {
  ClippedCounts out;
  out.candidate_length = static_cast<long long>(candidate.size());
  out.reference_length = ClosestReferenceLength(candidate.size(), references);
  for (std::size_t n = 1; n <= max_order; ++n) {
    std::map<std::string, int> max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : CountNgrams(ref, n)) {
        int& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    for (const auto& [gram, count] : CountNgrams(candidate, n)) {
      const auto it = max_ref.find(gram);
      if (it != max_ref.end()) out.matched[n - 1] += std::min(count, it->second);
      out.total[n - 1] += count;
    }
  }
  return out;
}

double Combine(const std::array<long long, kMaxNgramOrder>& matched,
               const std::array<long long, kMaxNgramOrder>& total, long long candidate_length,
               long long reference_length, std::size_t n, bool smoothing) {
  if (candidate_length == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double p;
    if (matched[k] > 0) {
      p = static_cast<double>(matched[k]) / static_cast<double>(total[k]);
    } else if (smoothing && k > 0) {
      p = 1.0 / static_cast<double>(total[k] + 1);
    } else {
      return 0.0;
    }
    log_sum += std::log(p);
  }
  const double bp =
      candidate_length >= reference_length
          ? 1.0
          : std::exp(1.0 - static_cast<double>(reference_length) /
                               static_cast<double>(candidate_length));
  return bp * std::exp(log_sum / static_cast<double>(n));
}

void CheckOrder(std::size_t n) {
  if (n < 1 || n > kMaxNgramOrder) {
    throw RangeError("BLEU order must be in 1..4, got " + std::to_string(n));
  }
}

}  // namespace

double BleuN(const TokenSequence& candidate, std::span<const TokenSequence> references,
             std::size_t n, bool smoothing) {
  CheckOrder(n);
  if (references.empty()) throw ValidationError("BLEU needs at least one reference");
  if (candidate.empty()) return 0.0;
  const auto c = Count(candidate, references, n);
  return Combine(c.matched, c.total, c.candidate_length, c.reference_length, n, smoothing);
}

void BleuAccumulator::Add(const TokenSequence& candidate,
                          std::span<const TokenSequence> references) {
  if (references.empty()) throw ValidationError("BLEU needs at least one reference");
  const auto c = Count(candidate, references, kMaxNgramOrder);
  for (std::size_t k = 0; k < kMaxNgramOrder; ++k) {
    matched_[k] += c.matched[k];
    total_[k] += c.total[k];
  }
  candidate_length_ += c.candidate_length;
  reference_length_ += c.reference_length;
  ++pairs_;
}

double BleuAccumulator::Score(std::size_t n) const {
  CheckOrder(n);
  return Combine(matched_, total_, candidate_length_, reference_length_, n, false);
}

}  // namespace dmc
