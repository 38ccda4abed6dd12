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

#include "dmc/caption_metrics.hpp"
#include "dmc/error.hpp"

namespace dmc {

const char* CaptionMetricName(CaptionMetric metric) {
  switch (metric) {
    case CaptionMetric::kBleu1: return "bleu1";
    case CaptionMetric::kBleu4: return "bleu4";
    case CaptionMetric::kRougeL: return "rouge_l";
    case CaptionMetric::kCider: return "cider";
    case CaptionMetric::kMeteor: return "meteor";
  }
  return "unknown";
}

CaptionMetric ParseCaptionMetric(const std::string& name) {
  for (CaptionMetric m : kAllCaptionMetrics) {
    if (name == CaptionMetricName(m)) return m;
  }
  throw ValidationError("unknown caption metric '" + name + "'");
}

PairScorer MakePairScorer(CaptionMetric metric, const CorpusStats* stats, bool bleu_smoothing) {
  switch (metric) {
    case CaptionMetric::kBleu1:
      return [](const TokenSequence& c, const TokenSequence& r) {
        return BleuN(c, std::span(&r, 1), 1, false);
      };
    case CaptionMetric::kBleu4:
      return [bleu_smoothing](const TokenSequence& c, const TokenSequence& r) {
        return BleuN(c, std::span(&r, 1), 4, bleu_smoothing);
      };
    case CaptionMetric::kRougeL:
      return [](const TokenSequence& c, const TokenSequence& r) {
        return RougeL(c, std::span(&r, 1));
      };
    case CaptionMetric::kCider:
      if (stats == nullptr) throw ValidationError("CIDEr scorer needs corpus statistics");
      return [stats](const TokenSequence& c, const TokenSequence& r) {
        return Cider(c, std::span(&r, 1), *stats);
      };
    case CaptionMetric::kMeteor:
      return [](const TokenSequence& c, const TokenSequence& r) {
        return MeteorLite(c, std::span(&r, 1));
      };
  }
  throw Error(ErrorCode::kInternal, "unhandled caption metric");
}

}  // namespace dmc
