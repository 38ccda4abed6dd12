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
#include <map>

#include "dmc/caption_metrics.hpp"
#include "dmc/error.hpp"

namespace dmc {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
// Search nodes explored before settling on the best alignment found so far.
constexpr std::size_t kSearchBudget = 200000;

enum MatchKind : unsigned char { kNoMatch = 0, kStem = 1, kExact = 2 };

class MeteorAligner {
 public:
  MeteorAligner(const TokenSequence& cand, const TokenSequence& ref)
      : n_(cand.size()), m_(ref.size()) {
    std::map<std::string, std::size_t> word_ids, stem_ids;
    auto id_of = [](std::map<std::string, std::size_t>& ids, const std::string& key) {
      return ids.emplace(key, ids.size()).first->second;
    };
    for (const auto& t : cand) {
      cand_word_.push_back(id_of(word_ids, t));
      cand_stem_.push_back(id_of(stem_ids, PorterStem(t)));
    }
    for (const auto& t : ref) {
      ref_word_.push_back(id_of(word_ids, t));
      ref_stem_.push_back(id_of(stem_ids, PorterStem(t)));
    }
    cand_word_left_.assign(word_ids.size(), 0);
    ref_word_left_.assign(word_ids.size(), 0);
    cand_stem_left_.assign(stem_ids.size(), 0);
    ref_stem_left_.assign(stem_ids.size(), 0);
    for (std::size_t i = 0; i < n_; ++i) {
      ++cand_word_left_[cand_word_[i]];
      ++cand_stem_left_[cand_stem_[i]];
    }
    for (std::size_t j = 0; j < m_; ++j) {
      ++ref_word_left_[ref_word_[j]];
      ++ref_stem_left_[ref_stem_[j]];
    }
    exact_quota_ = ExactBound();
    total_quota_ = TotalBound();
  }

  MeteorAlignment Run() {
    best_ = StagedGreedy();
    assignment_.assign(n_, kNone);
    used_.assign(m_, false);
    Search(0, kNone, 0, 0, 0);
    return Finish(best_);
  }

 private:
  MatchKind Kind(std::size_t i, std::size_t j) const {
    if (cand_word_[i] == ref_word_[j]) return kExact;
    if (cand_stem_[i] == ref_stem_[j]) return kStem;
    return kNoMatch;
  }

  std::size_t ExactBound() const {
    std::size_t s = 0;
    for (std::size_t w = 0; w < cand_word_left_.size(); ++w) {
      s += std::min(cand_word_left_[w], ref_word_left_[w]);
    }
    return s;
  }

  std::size_t TotalBound() const {
    std::size_t s = 0;
    for (std::size_t k = 0; k < cand_stem_left_.size(); ++k) {
      s += std::min(cand_stem_left_[k], ref_stem_left_[k]);
    }
    return s;
  }

  // Exact stage then stem stage, each preferring to extend the current chunk.
  std::vector<std::size_t> StagedGreedy() const {
    std::vector<std::size_t> assign(n_, kNone);
    std::vector<bool> used(m_, false);
    for (MatchKind stage : {kExact, kStem}) {
      std::size_t last_j = kNone;
      for (std::size_t i = 0; i < n_; ++i) {
        if (assign[i] != kNone) {
          last_j = assign[i];
          continue;
        }
        std::size_t pick = kNone;
        if (last_j != kNone && last_j + 1 < m_ && !used[last_j + 1] &&
            Kind(i, last_j + 1) == stage) {
          pick = last_j + 1;
        }
        for (std::size_t j = 0; j < m_ && pick == kNone; ++j) {
          if (!used[j] && Kind(i, j) == stage) pick = j;
        }
        if (pick != kNone) {
          assign[i] = pick;
          used[pick] = true;
        }
        last_j = pick;
      }
    }
    return assign;
  }

  static std::size_t CountChunks(const std::vector<std::size_t>& assign) {
    std::size_t chunks = 0;
    std::size_t prev_i = kNone, prev_j = kNone;
    for (std::size_t i = 0; i < assign.size(); ++i) {
      if (assign[i] == kNone) continue;
      if (prev_i == kNone || prev_i + 1 != i || prev_j + 1 != assign[i]) ++chunks;
      prev_i = i;
      prev_j = assign[i];
    }
    return chunks;
  }

  void Search(std::size_t i, std::size_t prev_j_if_adjacent, std::size_t chunks,
              std::size_t exact, std::size_t total) {
    if (++nodes_ > kSearchBudget) return;
    if (best_chunks_ == kNone) best_chunks_ = CountChunks(best_);
    if (chunks >= best_chunks_ && total > 0) return;
    if (exact + ExactBound() < exact_quota_ || total + TotalBound() < total_quota_) return;
    if (i == n_) {
      if (exact == exact_quota_ && total == total_quota_ && chunks < best_chunks_) {
        best_ = assignment_;
        best_chunks_ = chunks;
      }
      return;
    }
    --cand_word_left_[cand_word_[i]];
    --cand_stem_left_[cand_stem_[i]];

    auto try_match = [&](std::size_t j) {
      const MatchKind kind = Kind(i, j);
      const bool extends = prev_j_if_adjacent != kNone && j == prev_j_if_adjacent + 1;
      used_[j] = true;
      assignment_[i] = j;
      --ref_word_left_[ref_word_[j]];
      --ref_stem_left_[ref_stem_[j]];
      Search(i + 1, j, chunks + (extends ? 0 : 1), exact + (kind == kExact ? 1 : 0), total + 1);
      ++ref_word_left_[ref_word_[j]];
      ++ref_stem_left_[ref_stem_[j]];
      assignment_[i] = kNone;
      used_[j] = false;
    };

    const std::size_t cont = prev_j_if_adjacent == kNone ? kNone : prev_j_if_adjacent + 1;
    if (cont != kNone && cont < m_ && !used_[cont] && Kind(i, cont) != kNoMatch) try_match(cont);
    for (MatchKind stage : {kExact, kStem}) {
      for (std::size_t j = 0; j < m_; ++j) {
        if (j == cont || used_[j] || Kind(i, j) != stage) continue;
        try_match(j);
      }
    }
    Search(i + 1, kNone, chunks, exact, total);

    ++cand_word_left_[cand_word_[i]];
    ++cand_stem_left_[cand_stem_[i]];
  }

  MeteorAlignment Finish(const std::vector<std::size_t>& assign) const {
    MeteorAlignment out;
    for (std::size_t i = 0; i < assign.size(); ++i) {
      if (assign[i] == kNone) continue;
      out.pairs.emplace_back(i, assign[i]);
      ++out.matches;
      if (Kind(i, assign[i]) == kExact) ++out.exact_matches;
    }
    out.chunks = CountChunks(assign);
    return out;
  }

  std::size_t n_, m_;
  std::vector<std::size_t> cand_word_, cand_stem_, ref_word_, ref_stem_;
  std::vector<std::size_t> cand_word_left_, ref_word_left_, cand_stem_left_, ref_stem_left_;
  std::size_t exact_quota_ = 0, total_quota_ = 0;
  std::vector<std::size_t> assignment_;
  std::vector<bool> used_;
  std::vector<std::size_t> best_;
  std::size_t best_chunks_ = kNone;
  std::size_t nodes_ = 0;
};

}  // namespace

MeteorAlignment AlignForMeteor(const TokenSequence& candidate, const TokenSequence& reference) {
  return MeteorAligner(candidate, reference).Run();
}

double MeteorLite(const TokenSequence& candidate, std::span<const TokenSequence> references,
                  const MeteorParams& params) {
  if (references.empty()) throw ValidationError("METEOR needs at least one reference");
  if (candidate.empty()) return 0.0;
  double best = 0.0;
  for (const auto& ref : references) {
    if (ref.empty()) continue;
    const auto alignment = AlignForMeteor(candidate, ref);
    if (alignment.matches == 0) continue;
    const auto m = static_cast<double>(alignment.matches);
    const double precision = m / static_cast<double>(candidate.size());
    const double recall = m / static_cast<double>(ref.size());
    const double f_mean =
        precision * recall / (params.alpha * precision + (1.0 - params.alpha) * recall);
    const double fragmentation = static_cast<double>(alignment.chunks) / m;
    const double penalty = params.gamma * std::pow(fragmentation, params.beta);
    best = std::max(best, f_mean * (1.0 - penalty));
  }
  return best;
}

}  // namespace dmc
