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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace dmc {

/// id -> embedding vector; all vectors share one dimension.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  /// Throws ValidationError on duplicate ids, dimension mismatch or
  /// non-finite values.
  void Add(std::string id, std::vector<double> vector);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& ids() const { return ids_; }
  bool Contains(const std::string& id) const { return index_.count(id) != 0; }
  /// Throws ValidationError for an unknown id.
  std::span<const double> Get(const std::string& id) const;

  /// One {"id": str, "vector": [reals]} object per line.
  static EmbeddingTable Load(const std::filesystem::path& path);
  static EmbeddingTable FromText(const std::string& text);

 private:
  std::vector<std::string> ids_;
  std::vector<std::vector<double>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t dim_ = 0;
};

/// u.v / (|u||v|). Throws ValidationError on a dimension mismatch or a zero
/// vector.
double Cosine(std::span<const double> u, std::span<const double> v);

/// Mean cosine between motion and text embeddings of the same id. The id sets
/// must match exactly.
double TmrSimilarity(const EmbeddingTable& motions, const EmbeddingTable& texts);

struct CarResult {
  double recall_at_1 = 0.0;
  /// One entry per shuffled-caption table.
  std::vector<double> shuffled_recall_at_1;
  std::size_t batches = 0;
  std::size_t queries = 0;
  std::size_t dropped = 0;  // ids left over after the last full batch
  std::size_t batch_size = 0;
  std::uint64_t seed = 0;

  nlohmann::json ToJson() const;
};

/// Text-to-motion retrieval in seeded batches of `batch_size`. A query
/// succeeds when its own motion scores strictly higher than every other motion
/// of the batch. Shuffled-caption tables, keyed by the same ids, are scored as
/// extra queries for the same source motion and reported separately.
/// Throws ValidationError when batch_size exceeds the population or ids differ.
CarResult CarRetrieval(const EmbeddingTable& motions, const EmbeddingTable& true_texts,
                       std::span<const EmbeddingTable> shuffled_texts, std::size_t batch_size,
                       std::uint64_t seed);

}  // namespace dmc
