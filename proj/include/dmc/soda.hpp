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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dmc/annotation.hpp"
#include "dmc/caption_metrics.hpp"

namespace dmc {

enum class ScoreProvenance { kInternalMetric, kExternalFile };

/// Rows are references, columns are predictions.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  ScoreMatrix(std::size_t rows, std::size_t cols,
              ScoreProvenance provenance = ScoreProvenance::kInternalMetric)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0), provenance_(provenance) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ScoreProvenance provenance() const { return provenance_; }

  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  ScoreProvenance provenance_ = ScoreProvenance::kInternalMetric;
};

/// Entry (i, j) = scorer(pred_j, ref_i), times IoU(pred_j, ref_i) when
/// `iou_weighted`. Scorer exceptions are rethrown with the pair indices.
ScoreMatrix BuildScoreMatrix(const DenseAnnotation& refs, const DenseAnnotation& preds,
                             const PairScorer& scorer, bool iou_weighted = true);

struct AlignmentPath {
  /// (ref index, pred index), strictly increasing in both coordinates.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double total_score = 0.0;
};

/// Maximum-score order-preserving one-to-one alignment. Among optimal paths
/// the lexicographically smallest pair sequence is returned, so cells that
/// add nothing are left out.
AlignmentPath DpAlign(const ScoreMatrix& scores);

struct SodaResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  AlignmentPath path;
};

/// precision = s*/P, recall = s*/R; all zero when either side is empty.
SodaResult SodaFromMatrix(const ScoreMatrix& scores);

SodaResult SodaScore(const DenseAnnotation& refs, const DenseAnnotation& preds,
                     const PairScorer& scorer, bool iou_weighted = true);

/// "<sequence id>#<segment index>", the id scheme of external score files.
std::string SegmentId(const std::string& sequence_id, std::size_t index);

/// Converts one {"ref_ids", "pred_ids", "scores"} object, checking that ids
/// and dimensions match `refs` x `preds` and every entry is a finite,
/// non-negative number. Throws ValidationError.
ScoreMatrix ScoreMatrixFromJson(const nlohmann::json& j, const DenseAnnotation& refs,
                                const DenseAnnotation& preds);

/// External score matrices keyed by sequence id. The file is either a single
/// JSON object or one object per line.
class ExternalScoreTable {
 public:
  static ExternalScoreTable Load(const std::filesystem::path& path);
  static ExternalScoreTable FromText(const std::string& text);

  bool Contains(const std::string& sequence_id) const { return by_sequence_.count(sequence_id) != 0; }
  std::size_t size() const { return by_sequence_.size(); }
  ScoreMatrix MatrixFor(const DenseAnnotation& refs, const DenseAnnotation& preds) const;

 private:
  std::map<std::string, nlohmann::json> by_sequence_;
};

/// Loads the matrix for `refs.sequence_id` from `path`.
ScoreMatrix LoadExternalScores(const std::filesystem::path& path, const DenseAnnotation& refs,
                               const DenseAnnotation& preds);

}  // namespace dmc
