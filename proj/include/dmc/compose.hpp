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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmc/annotation.hpp"
#include "dmc/motion.hpp"
#include "dmc/rng.hpp"

namespace dmc {

struct CompositionConfig {
  int k_min = 2;
  int k_max = 10;
  double alpha = 0.3;
  double beta = 0.8;
  double transition_s = 0.5;
  int blend_frames = 10;  // split evenly: last half of one clip, first half of the next
  std::uint64_t seed = 0;
  std::array<double, 3> split_ratios = {0.8, 0.1, 0.1};  // train / val / test
  double min_alignment = 0.5;

  /// Throws ValidationError.
  void Validate() const;
  nlohmann::json ToJson() const;
  /// Missing keys keep their defaults; unknown keys are rejected.
  static CompositionConfig FromJson(const nlohmann::json& j);
};

struct DurationDraw {
  double seconds = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// The interval was empty and `seconds` fell back to `lower`.
  bool clamped = false;
};

/// Lower and upper ends of the perturbed-duration interval for `t_gt`.
std::pair<double, double> DurationInterval(double t_gt, double alpha, double beta);

/// Uniform draw from [t_gt*beta + alpha, min((2-beta)*t_gt + alpha, t_gt + beta + 1)].
DurationDraw SampleDuration(double t_gt, const CompositionConfig& config, Rng& rng);

struct PlanEntry {
  std::size_t atomic_index;  // into the pool
  std::string atomic_id;
  double planned_duration_s;
  std::int64_t start_cs;
  std::int64_t end_cs;
};

struct TimelinePlan {
  std::vector<PlanEntry> entries;
  std::int64_t total_duration_cs = 0;

  /// [end_i, start_{i+1}) transition spans in centiseconds.
  std::vector<std::pair<std::int64_t, std::int64_t>> Gaps() const;
};

struct PlannedSequence {
  TimelinePlan plan;
  DenseAnnotation annotation;
};

/// K ~ U{k_min..k_max} atomics without replacement, contiguous up to the
/// fixed transition gap. Segments cover only the atomics, not the gaps.
/// Throws ValidationError when the pool has fewer than k_max entries.
PlannedSequence PlanTimeline(std::span<const AtomicEntry> pool, const CompositionConfig& config,
                             Rng& rng, std::string sequence_id = {});

struct FilterResult {
  std::vector<AtomicEntry> kept;
  std::map<std::string, std::size_t> kept_by_source;
  std::map<std::string, std::size_t> removed_by_source;
  std::vector<std::string> unscored_ids;  // kept without a score
  std::vector<std::string> warnings;
};

/// Drops entries with alignment_score < min_alignment. Unscored entries are
/// kept and listed.
FilterResult FilterPool(std::span<const AtomicEntry> pool, double min_alignment);

enum class Split { kTrain, kVal, kTest };
const char* SplitName(Split split);

struct ManifestEntry {
  std::string id;
  std::uint64_t seed;
  Split split;
  std::vector<std::string> atomic_ids;
  std::vector<double> planned_durations_s;
  std::int64_t duration_cs;
  std::vector<std::pair<std::int64_t, std::int64_t>> gaps_cs;
};

struct DatasetManifest {
  CompositionConfig config;
  std::size_t pool_size = 0;
  std::vector<ManifestEntry> sequences;

  nlohmann::json ToJson() const;
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<PlannedSequence> sequences;
};

/// Per-sequence seed for sequence `index` under `config.seed`.
std::uint64_t SequenceSeed(std::uint64_t seed, std::size_t index);

/// Composes `count` sequences. Sequence i draws from Rng(SequenceSeed(seed, i))
/// so results do not depend on `threads`. Splits come from a seeded shuffle of
/// the indices; sizes are rounded train and val counts with the rest in test.
Dataset BuildDataset(std::span<const AtomicEntry> pool, std::size_t count,
                     const CompositionConfig& config, std::size_t threads = 1);

/// Expected mean sequence duration: E[K]*E[T] + (E[K]-1)*transition, with T
/// averaged over the pool's interval midpoints.
double ExpectedSequenceDuration(std::span<const AtomicEntry> pool, const CompositionConfig& config);

// ---------------------------------------------------------------------------
// Pool files

/// One JSON object per line: {"id", "caption", "gt_duration_s", "source",
/// "alignment_score"?, "motion_path"}. Motion paths are resolved against
/// `motion_dir` when relative. With `load_motions` false the motion field is
/// left empty.
std::vector<AtomicEntry> LoadPool(const std::filesystem::path& pool_path,
                                  const std::filesystem::path& motion_dir, bool load_motions = true);

}  // namespace dmc
