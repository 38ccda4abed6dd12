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
#include <vector>

#include "dmc/caption_metrics.hpp"
#include "dmc/error.hpp"

namespace dmc {

std::size_t LongestCommonSubsequence(const TokenSequence& a, const TokenSequence& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double RougeL(const TokenSequence& candidate, std::span<const TokenSequence> references) {
  if (references.empty()) throw ValidationError("ROUGE-L needs at least one reference");
  if (candidate.empty()) return 0.0;
  constexpr double beta2 = kRougeBeta * kRougeBeta;
  double best = 0.0;
  for (const auto& ref : references) {
    if (ref.empty()) continue;
    const auto lcs = static_cast<double>(LongestCommonSubsequence(candidate, ref));
    if (lcs == 0.0) continue;
    const double recall = lcs / static_cast<double>(ref.size());
    const double precision = lcs / static_cast<double>(candidate.size());
    const double f = (1.0 + beta2) * recall * precision / (recall + beta2 * precision);
    best = std::max(best, f);
  }
  return best;
}

}  // namespace dmc
