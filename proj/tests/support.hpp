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

// Helpers shared by the unit tests and the acceptance runner: temp dirs,
// seeded fixture generators, and brute-force reference implementations.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include "dmc/annotation.hpp"
#include "dmc/motion.hpp"
#include "dmc/rng.hpp"
#include "dmc/soda.hpp"
#include "dmc/temporal.hpp"

namespace dmc::testing {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("dmc_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string ReadBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline TimedSegment Seg(std::int64_t start_cs, std::int64_t end_cs, std::string caption = "x") {
  return {Timestamp(start_cs), Timestamp(end_cs), std::move(caption)};
}

inline DenseAnnotation Ann(std::vector<TimedSegment> segs, std::int64_t duration_cs = -1,
                           std::string id = "s") {
  std::int64_t d = duration_cs;
  if (d < 0) {
    d = 1;
    for (const auto& s : segs) d = std::max(d, s.end.centiseconds());
  }
  return {std::move(id), Timestamp(d), std::move(segs)};
}

inline const std::vector<std::string>& Vocabulary() {
  static const std::vector<std::string> words = {
      "a",     "person", "walks",  "forward", "then",  "turns", "left",  "right",
      "jumps", "up",     "and",    "down",    "waves", "hand",  "kicks", "with",
      "the",   "leg",    "slowly", "quickly", "sits",  "stands", "runs", "in",
      "circle", "bends", "over",   "raises",  "arms",  "squats"};
  return words;
}

inline std::string RandomCaption(Rng& rng, int min_words = 2, int max_words = 10) {
  const auto n = rng.UniformInt(min_words, max_words);
  std::string s;
  const auto& v = Vocabulary();
  for (std::int64_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += v[static_cast<std::size_t>(rng.UniformInt(0, static_cast<std::int64_t>(v.size()) - 1))];
  }
  return s;
}

/// Sorted, non-overlapping segments with random gaps.
inline DenseAnnotation RandomAnnotation(Rng& rng, std::string id, int min_segs = 1,
                                        int max_segs = 8) {
  const auto m = rng.UniformInt(min_segs, max_segs);
  std::vector<TimedSegment> segs;
  std::int64_t t = rng.UniformInt(0, 50);
  for (std::int64_t i = 0; i < m; ++i) {
    const auto len = rng.UniformInt(20, 400);
    segs.push_back(Seg(t, t + len, RandomCaption(rng)));
    t += len + rng.UniformInt(0, 60);
  }
  return Ann(std::move(segs), t + rng.UniformInt(0, 100), std::move(id));
}

/// Arbitrary (possibly overlapping, unsorted) segments, used for matching
/// oracles where predictions need not be well formed.
inline std::vector<TimedSegment> RandomIntervals(Rng& rng, std::size_t count, std::int64_t span) {
  std::vector<TimedSegment> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto a = rng.UniformInt(0, span - 1);
    const auto b = rng.UniformInt(a + 1, span);
    out.push_back(Seg(a, b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracles

/// Best total over every order-preserving one-to-one matching.
inline double BruteForceAlignScore(const ScoreMatrix& s) {
  double best = 0.0;
  std::function<void(std::size_t, std::size_t, double)> go = [&](std::size_t r, std::size_t c,
                                                                 double acc) {
    best = std::max(best, acc);
    for (std::size_t i = r; i < s.rows(); ++i) {
      for (std::size_t j = c; j < s.cols(); ++j) go(i + 1, j + 1, acc + s.at(i, j));
    }
  };
  go(0, 0, 0.0);
  return best;
}

struct Rational {
  std::int64_t num;
  std::int64_t den;
};

inline Rational IouRational(const TimedSegment& a, const TimedSegment& b) {
  const auto s0 = a.start.centiseconds(), e0 = a.end.centiseconds();
  const auto s1 = b.start.centiseconds(), e1 = b.end.centiseconds();
  const auto inter = std::max<std::int64_t>(0, std::min(e0, e1) - std::max(s0, s1));
  const auto uni = (e0 - s0) + (e1 - s1) - inter;
  return {inter, uni};
}

/// Replays the greedy rule by scanning every remaining pair each round.
/// Returns (pred, ref) in selection order.
inline std::vector<std::pair<std::size_t, std::size_t>> BruteGreedy(
    const std::vector<TimedSegment>& preds, const std::vector<TimedSegment>& refs) {
  std::vector<bool> pu(preds.size(), false), ru(refs.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  while (true) {
    bool found = false;
    Rational best{0, 1};
    std::size_t bp = 0, br = 0;
    for (std::size_t r = 0; r < refs.size(); ++r) {
      for (std::size_t p = 0; p < preds.size(); ++p) {
        if (pu[p] || ru[r]) continue;
        const Rational q = IouRational(preds[p], refs[r]);
        if (q.num == 0) continue;
        // Strictly greater only: the scan order (ref, then pred) settles ties.
        if (!found || q.num * best.den > best.num * q.den) {
          found = true;
          best = q;
          bp = p;
          br = r;
        }
      }
    }
    if (!found) break;
    pu[bp] = ru[br] = true;
    out.emplace_back(bp, br);
  }
  return out;
}

/// Maximum total IoU over all one-to-one matchings (bitmask DP over refs).
inline double OptimalIouSum(const std::vector<TimedSegment>& preds,
                            const std::vector<TimedSegment>& refs) {
  const std::size_t n = refs.size();
  std::vector<double> dp(std::size_t{1} << n, -1.0);
  dp[0] = 0.0;
  for (std::size_t p = 0; p < preds.size(); ++p) {
    std::vector<double> next = dp;
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (dp[mask] < 0) continue;
      for (std::size_t r = 0; r < n; ++r) {
        if (mask & (std::size_t{1} << r)) continue;
        const Rational q = IouRational(preds[p], refs[r]);
        const double v = dp[mask] + static_cast<double>(q.num) / static_cast<double>(q.den);
        next[mask | (std::size_t{1} << r)] = std::max(next[mask | (std::size_t{1} << r)], v);
      }
    }
    dp = std::move(next);
  }
  return *std::max_element(dp.begin(), dp.end());
}

/// Pool of `size` atomics at 20 Hz with J joints. Durations are whole frames.
inline std::vector<AtomicEntry> SyntheticPool(std::uint64_t seed, std::size_t size,
                                              std::size_t joints = 3) {
  Rng rng(seed);
  std::vector<AtomicEntry> pool;
  for (std::size_t i = 0; i < size; ++i) {
    const auto frames = static_cast<std::size_t>(rng.UniformInt(20, 120));
    std::vector<float> v(frames * joints * 3);
    const double phase = rng.Uniform(0.0, 6.28);
    for (std::size_t f = 0; f < frames; ++f) {
      for (std::size_t k = 0; k < joints * 3; ++k) {
        v[f * joints * 3 + k] = static_cast<float>(
            std::sin(phase + 0.1 * static_cast<double>(f) + static_cast<double>(k)) +
            0.01 * static_cast<double>(i));
      }
    }
    AtomicEntry a;
    a.id = "atom_" + std::to_string(i);
    a.caption = RandomCaption(rng, 3, 8);
    a.motion = MotionSequence(a.id, frames, joints, 20.0, std::move(v));
    a.gt_duration_s = a.motion.duration_s();
    a.source = i % 3 == 0 ? AtomicSource::kMocap : AtomicSource::kGenerated;
    a.alignment_score = 0.5 + 0.5 * rng.Uniform01();
    pool.push_back(std::move(a));
  }
  return pool;
}

}  // namespace dmc::testing
