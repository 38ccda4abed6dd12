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

#include "dmc/soda.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dmc/error.hpp"
#include "dmc/file_util.hpp"
#include "dmc/temporal.hpp"
#include "dmc/text.hpp"

namespace dmc {

ScoreMatrix BuildScoreMatrix(const DenseAnnotation& refs, const DenseAnnotation& preds,
                             const PairScorer& scorer, bool iou_weighted) {
  ScoreMatrix s(refs.size(), preds.size());
  std::vector<TokenSequence> pred_tokens;
  pred_tokens.reserve(preds.size());
  for (const auto& p : preds.segments) pred_tokens.push_back(Tokenize(p.caption));
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const TokenSequence ref_tokens = Tokenize(refs.segments[i].caption);
    for (std::size_t j = 0; j < preds.size(); ++j) {
      double weight = 1.0;
      if (iou_weighted) {
        weight = SegmentIou(preds.segments[j], refs.segments[i]);
        if (weight == 0.0) continue;
      }
      double value;
      try {
        value = scorer(pred_tokens[j], ref_tokens);
      } catch (const std::exception& e) {
        throw Error(ErrorCode::kInternal, "scorer failed on ref " + std::to_string(i) +
                                              ", pred " + std::to_string(j) + ": " + e.what());
      }
      if (!std::isfinite(value) || value < 0.0) {
        throw Error(ErrorCode::kInternal, "scorer returned " + std::to_string(value) +
                                              " on ref " + std::to_string(i) + ", pred " +
                                              std::to_string(j));
      }
      s.at(i, j) = value * weight;
    }
  }
  return s;
}

AlignmentPath DpAlign(const ScoreMatrix& scores) {
  const std::size_t rows = scores.rows(), cols = scores.cols();
  // best[i][j]: optimum over refs i.. and preds j.. (suffix problem).
  std::vector<double> best((rows + 1) * (cols + 1), 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return best[i * (cols + 1) + j]; };
  for (std::size_t i = rows; i-- > 0;) {
    for (std::size_t j = cols; j-- > 0;) {
      at(i, j) = std::max({at(i + 1, j), at(i, j + 1), scores.at(i, j) + at(i + 1, j + 1)});
    }
  }

  AlignmentPath path;
  std::size_t i = 0, j = 0;
  // Walk forward taking the smallest next pair that preserves optimality; the
  // empty continuation is preferred whenever nothing positive remains.
  while (i < rows && j < cols && at(i, j) > 0.0) {
    const double target = at(i, j);
    bool found = false;
    for (std::size_t a = i; a < rows && !found; ++a) {
      for (std::size_t b = j; b < cols && !found; ++b) {
        if (scores.at(a, b) + at(a + 1, b + 1) == target) {
          path.pairs.emplace_back(a, b);
          i = a + 1;
          j = b + 1;
          found = true;
        }
      }
    }
    if (!found) break;
  }
  for (const auto& [r, c] : path.pairs) path.total_score += scores.at(r, c);
  return path;
}

SodaResult SodaFromMatrix(const ScoreMatrix& scores) {
  SodaResult out;
  if (scores.rows() == 0 || scores.cols() == 0) return out;
  out.path = DpAlign(scores);
  const double s = out.path.total_score;
  out.precision = s / static_cast<double>(scores.cols());
  out.recall = s / static_cast<double>(scores.rows());
  if (out.precision + out.recall > 0.0) {
    out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

SodaResult SodaScore(const DenseAnnotation& refs, const DenseAnnotation& preds,
                     const PairScorer& scorer, bool iou_weighted) {
  if (refs.empty() || preds.empty()) return {};
  return SodaFromMatrix(BuildScoreMatrix(refs, preds, scorer, iou_weighted));
}

std::string SegmentId(const std::string& sequence_id, std::size_t index) {
  return sequence_id + "#" + std::to_string(index);
}

namespace {

void CheckIds(const nlohmann::json& ids, const DenseAnnotation& a, const char* key) {
  if (!ids.is_array()) throw ValidationError(std::string(key) + " must be an array");
  if (ids.size() != a.size()) {
    throw ValidationError(std::string(key) + " has " + std::to_string(ids.size()) +
                          " ids, annotation '" + a.sequence_id + "' has " +
                          std::to_string(a.size()) + " segments");
  }
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const std::string expected = SegmentId(a.sequence_id, k);
    if (!ids[k].is_string() || ids[k].get<std::string>() != expected) {
      throw ValidationError(std::string(key) + "[" + std::to_string(k) + "] is " +
                            ids[k].dump() + ", expected \"" + expected + "\"");
    }
  }
}

std::string SequenceOf(const nlohmann::json& j) {
  for (const char* key : {"ref_ids", "pred_ids"}) {
    if (!j.contains(key) || !j[key].is_array()) {
      throw ValidationError(std::string("score matrix is missing ") + key);
    }
    if (!j[key].empty()) {
      const auto& first = j[key][0];
      if (!first.is_string()) throw ValidationError(std::string(key) + " entries must be strings");
      const auto id = first.get<std::string>();
      const auto hash = id.rfind('#');
      if (hash == std::string::npos) {
        throw ValidationError("segment id '" + id + "' lacks the '#<index>' suffix");
      }
      return id.substr(0, hash);
    }
  }
  throw ValidationError("score matrix has no ids");
}

}  // namespace

ScoreMatrix ScoreMatrixFromJson(const nlohmann::json& j, const DenseAnnotation& refs,
                                const DenseAnnotation& preds) {
  if (!j.is_object()) throw ValidationError("score matrix must be a JSON object");
  if (!j.contains("ref_ids") || !j.contains("pred_ids") || !j.contains("scores")) {
    throw ValidationError("score matrix needs ref_ids, pred_ids and scores");
  }
  CheckIds(j["ref_ids"], refs, "ref_ids");
  CheckIds(j["pred_ids"], preds, "pred_ids");
  const auto& rows = j["scores"];
  if (!rows.is_array() || rows.size() != refs.size()) {
    throw ValidationError("scores must have " + std::to_string(refs.size()) + " rows");
  }
  ScoreMatrix s(refs.size(), preds.size(), ScoreProvenance::kExternalFile);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != preds.size()) {
      throw ValidationError("scores row " + std::to_string(r) + " must have " +
                            std::to_string(preds.size()) + " entries");
    }
    for (std::size_t c = 0; c < preds.size(); ++c) {
      const auto& v = rows[r][c];
      if (!v.is_number() || !std::isfinite(v.get<double>()) || v.get<double>() < 0.0) {
        throw ValidationError("scores[" + std::to_string(r) + "][" + std::to_string(c) +
                              "] = " + v.dump() + " is not a finite non-negative number");
      }
      s.at(r, c) = v.get<double>();
    }
  }
  return s;
}

ExternalScoreTable ExternalScoreTable::FromText(const std::string& text) {
  ExternalScoreTable table;
  auto add = [&table](nlohmann::json j) {
    if (!j.is_object()) throw ValidationError("score matrix must be a JSON object");
    const std::string seq = SequenceOf(j);
    if (!table.by_sequence_.emplace(seq, std::move(j)).second) {
      throw ValidationError("duplicate score matrix for sequence '" + seq + "'");
    }
  };
  // A whole-file parse succeeds for the single-object form.
  try {
    add(nlohmann::json::parse(text));
    return table;
  } catch (const nlohmann::json::parse_error&) {
  }
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      add(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError("score file line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

ExternalScoreTable ExternalScoreTable::Load(const std::filesystem::path& path) {
  return FromText(ReadTextFile(path));
}

ScoreMatrix ExternalScoreTable::MatrixFor(const DenseAnnotation& refs,
                                          const DenseAnnotation& preds) const {
  const auto it = by_sequence_.find(refs.sequence_id);
  if (it == by_sequence_.end()) {
    throw ValidationError("no external score matrix for sequence '" + refs.sequence_id + "'");
  }
  return ScoreMatrixFromJson(it->second, refs, preds);
}

ScoreMatrix LoadExternalScores(const std::filesystem::path& path, const DenseAnnotation& refs,
                               const DenseAnnotation& preds) {
  return ExternalScoreTable::Load(path).MatrixFor(refs, preds);
}

}  // namespace dmc
