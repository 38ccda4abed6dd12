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

#include "dmc/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "dmc/error.hpp"
#include "dmc/file_util.hpp"
#include "dmc/rng.hpp"

namespace dmc {

void EmbeddingTable::Add(std::string id, std::vector<double> vector) {
  if (vector.empty()) throw ValidationError("embedding '" + id + "' is empty");
  if (!ids_.empty() && vector.size() != dim_) {
    throw ValidationError("embedding '" + id + "' has dimension " + std::to_string(vector.size()) +
                          ", table dimension is " + std::to_string(dim_));
  }
  for (double v : vector) {
    if (!std::isfinite(v)) throw ValidationError("embedding '" + id + "' has a non-finite value");
  }
  if (index_.count(id)) throw ValidationError("duplicate embedding id '" + id + "'");
  dim_ = vector.size();
  index_.emplace(id, ids_.size());
  ids_.push_back(std::move(id));
  vectors_.push_back(std::move(vector));
}

std::span<const double> EmbeddingTable::Get(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw ValidationError("no embedding for id '" + id + "'");
  return vectors_[it->second];
}

EmbeddingTable EmbeddingTable::FromText(const std::string& text) {
  EmbeddingTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("vector") ||
          !j["vector"].is_array()) {
        throw ParseError("embedding", "expected {\"id\": str, \"vector\": [reals]}", line_no);
      }
      std::vector<double> v;
      for (const auto& x : j["vector"]) {
        if (!x.is_number()) throw ParseError("vector", "entries must be numbers", line_no);
        v.push_back(x.get<double>());
      }
      table.Add(j["id"].get<std::string>(), std::move(v));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("json", e.what(), line_no);
    }
  }
  return table;
}

EmbeddingTable EmbeddingTable::Load(const std::filesystem::path& path) {
  return FromText(ReadTextFile(path));
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw ValidationError("cosine of vectors with dimensions " + std::to_string(u.size()) +
                          " and " + std::to_string(v.size()));
  }
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw ValidationError("cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

namespace {

void RequireSameIds(const EmbeddingTable& a, const EmbeddingTable& b, const char* what) {
  std::vector<std::string> only_a, only_b;
  for (const auto& id : a.ids()) {
    if (!b.Contains(id)) only_a.push_back(id);
  }
  for (const auto& id : b.ids()) {
    if (!a.Contains(id)) only_b.push_back(id);
  }
  if (a.empty() && b.empty()) throw ValidationError(std::string(what) + ": no embeddings");
  if (only_a.empty() && only_b.empty()) return;
  auto list = [](const std::vector<std::string>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size() && i < 5; ++i) s += (i ? ", " : "") + ids[i];
    if (ids.size() > 5) s += ", ... (" + std::to_string(ids.size()) + " total)";
    return s.empty() ? std::string("none") : s;
  };
  throw ValidationError(std::string(what) + ": id sets differ; only in motions: " + list(only_a) +
                        "; only in texts: " + list(only_b));
}

}  // namespace

double TmrSimilarity(const EmbeddingTable& motions, const EmbeddingTable& texts) {
  RequireSameIds(motions, texts, "TMR similarity");
  double sum = 0.0;
  for (const auto& id : motions.ids()) sum += Cosine(motions.Get(id), texts.Get(id));
  return sum / static_cast<double>(motions.size());
}

CarResult CarRetrieval(const EmbeddingTable& motions, const EmbeddingTable& true_texts,
                       std::span<const EmbeddingTable> shuffled_texts, std::size_t batch_size,
                       std::uint64_t seed) {
  RequireSameIds(motions, true_texts, "CAR retrieval");
  for (const auto& s : shuffled_texts) RequireSameIds(motions, s, "CAR retrieval (shuffled)");
  if (batch_size < 1 || batch_size > motions.size()) {
    throw ValidationError("batch size " + std::to_string(batch_size) + " must be in 1.." +
                          std::to_string(motions.size()));
  }
  CarResult out;
  out.batch_size = batch_size;
  out.seed = seed;

  std::vector<std::string> ids = motions.ids();
  std::sort(ids.begin(), ids.end());
  Rng rng(seed);
  rng.Shuffle(std::span<std::string>(ids));
  out.batches = ids.size() / batch_size;
  out.dropped = ids.size() - out.batches * batch_size;

  auto hit = [&](std::span<const double> query, std::size_t batch_begin, std::size_t own) {
    const double own_score = Cosine(query, motions.Get(ids[own]));
    for (std::size_t k = batch_begin; k < batch_begin + batch_size; ++k) {
      if (k != own && Cosine(query, motions.Get(ids[k])) >= own_score) return false;
    }
    return true;
  };

  std::size_t hits = 0;
  std::vector<std::size_t> shuffled_hits(shuffled_texts.size(), 0);
  for (std::size_t b = 0; b < out.batches; ++b) {
    const std::size_t begin = b * batch_size;
    for (std::size_t q = begin; q < begin + batch_size; ++q) {
      if (hit(true_texts.Get(ids[q]), begin, q)) ++hits;
      for (std::size_t s = 0; s < shuffled_texts.size(); ++s) {
        if (hit(shuffled_texts[s].Get(ids[q]), begin, q)) ++shuffled_hits[s];
      }
    }
  }
  out.queries = out.batches * batch_size;
  out.recall_at_1 = static_cast<double>(hits) / static_cast<double>(out.queries);
  for (std::size_t s = 0; s < shuffled_texts.size(); ++s) {
    out.shuffled_recall_at_1.push_back(static_cast<double>(shuffled_hits[s]) /
                                       static_cast<double>(out.queries));
  }
  return out;
}

nlohmann::json CarResult::ToJson() const {
  return {{"recall_at_1", recall_at_1},
          {"shuffled_recall_at_1", shuffled_recall_at_1},
          {"batches", batches},
          {"queries", queries},
          {"dropped", dropped},
          {"batch_size", batch_size},
          {"seed", seed},
          {"protocol",
           "text-to-motion retrieval within seeded batches; a query counts when its own motion "
           "scores strictly highest; shuffled-caption queries target the same motion"}};
}

}  // namespace dmc
