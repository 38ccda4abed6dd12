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
#include <set>

#include "dmc/caption_metrics.hpp"
#include "dmc/error.hpp"

namespace dmc {

int CorpusStats::DocumentFrequency(std::size_t order, const std::string& ngram) const {
  if (order < 1 || order > kMaxNgramOrder) return 0;
  const auto& table = df_[order - 1];
  const auto it = table.find(ngram);
  return it == table.end() ? 0 : it->second;
}

CorpusStats BuildCorpusStats(std::span<const std::vector<TokenSequence>> reference_groups) {
  CorpusStats stats;
  stats.document_count_ = reference_groups.size();
  for (const auto& group : reference_groups) {
    for (std::size_t n = 1; n <= kMaxNgramOrder; ++n) {
      std::set<std::string> seen;
      for (const auto& ref : group) {
        for (const auto& entry : CountNgrams(ref, n)) seen.insert(entry.first);
      }
      for (const auto& gram : seen) ++stats.df_[n - 1][gram];
    }
  }
  return stats;
}

namespace {

struct TfIdfVector {
  std::array<std::map<std::string, double>, kMaxNgramOrder> weights;
  std::array<double, kMaxNgramOrder> norms{};
  double length = 0.0;
};

TfIdfVector Vectorize(const TokenSequence& tokens, const CorpusStats& stats) {
  TfIdfVector v;
  const double log_docs = std::log(static_cast<double>(stats.document_count()));
  for (std::size_t n = 1; n <= kMaxNgramOrder; ++n) {
    double norm2 = 0.0;
    for (const auto& [gram, tf] : CountNgrams(tokens, n)) {
      const double df = std::max(1, stats.DocumentFrequency(n, gram));
      const double w = tf * (log_docs - std::log(df));
      v.weights[n - 1][gram] = w;
      norm2 += w * w;
    }
    v.norms[n - 1] = std::sqrt(norm2);
  }
  v.length = static_cast<double>(tokens.size());
  return v;
}

std::array<double, kMaxNgramOrder> Similarity(const TfIdfVector& cand, const TfIdfVector& ref) {
  std::array<double, kMaxNgramOrder> val{};
  const double delta = cand.length - ref.length;
  const double penalty = std::exp(-(delta * delta) / (2.0 * kCiderSigma * kCiderSigma));
  for (std::size_t k = 0; k < kMaxNgramOrder; ++k) {
    double dot = 0.0;
    for (const auto& [gram, w] : cand.weights[k]) {
      const auto it = ref.weights[k].find(gram);
      if (it != ref.weights[k].end()) dot += std::min(w, it->second) * it->second;
    }
    if (cand.norms[k] != 0.0 && ref.norms[k] != 0.0) {
      dot /= cand.norms[k] * ref.norms[k];
    } else {
      dot = 0.0;
    }
    val[k] = dot * penalty;
  }
  return val;
}

}  // namespace

double Cider(const TokenSequence& candidate, std::span<const TokenSequence> references,
             const CorpusStats& stats) {
  if (stats.document_count() == 0) {
    throw ValidationError("CIDEr needs corpus statistics over at least one document");
  }
  if (references.empty()) throw ValidationError("CIDEr needs at least one reference");
  const auto cand = Vectorize(candidate, stats);
  double total = 0.0;
  for (const auto& ref : references) {
    const auto sim = Similarity(cand, Vectorize(ref, stats));
    double mean = 0.0;
    for (double s : sim) mean += s;
    total += mean / static_cast<double>(kMaxNgramOrder);
  }
  return 10.0 * total / static_cast<double>(references.size());
}

}  // namespace dmc
