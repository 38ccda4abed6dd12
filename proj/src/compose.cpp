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

#include "dmc/compose.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "dmc/error.hpp"
#include "dmc/file_util.hpp"
#include "dmc/parallel.hpp"

namespace dmc {

void CompositionConfig::Validate() const {
  if (k_min < 2 || k_max < k_min) {
    throw ValidationError("composition needs 2 <= k_min <= k_max");
  }
  if (!(transition_s >= 0.0) || !std::isfinite(transition_s)) {
    throw ValidationError("transition_s must be non-negative");
  }
  if (blend_frames < 0) throw ValidationError("blend_frames must be non-negative");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw ValidationError("alpha and beta must be finite");
  }
  double sum = 0.0;
  for (double r : split_ratios) {
    if (!(r >= 0.0)) throw ValidationError("split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("split ratios must sum to 1");
}

nlohmann::json CompositionConfig::ToJson() const {
  return {{"k_min", k_min},
          {"k_max", k_max},
          {"alpha", alpha},
          {"beta", beta},
          {"transition_s", transition_s},
          {"blend_frames", blend_frames},
          {"seed", seed},
          {"split_ratios", split_ratios},
          {"min_alignment", min_alignment}};
}

CompositionConfig CompositionConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("composition config must be a JSON object");
  CompositionConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "k_min") {
        c.k_min = value.get<int>();
      } else if (key == "k_max") {
        c.k_max = value.get<int>();
      } else if (key == "alpha") {
        c.alpha = value.get<double>();
      } else if (key == "beta") {
        c.beta = value.get<double>();
      } else if (key == "transition_s") {
        c.transition_s = value.get<double>();
      } else if (key == "blend_frames") {
        c.blend_frames = value.get<int>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "split_ratios") {
        c.split_ratios = value.get<std::array<double, 3>>();
      } else if (key == "min_alignment") {
        c.min_alignment = value.get<double>();
      } else {
        throw ValidationError("unknown composition config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("composition config: ") + e.what());
  }
  c.Validate();
  return c;
}

std::pair<double, double> DurationInterval(double t_gt, double alpha, double beta) {
  const double lower = t_gt * beta + alpha;
  const double upper = std::min((2.0 - beta) * t_gt + alpha, t_gt + beta + 1.0);
  return {lower, upper};
}

DurationDraw SampleDuration(double t_gt, const CompositionConfig& config, Rng& rng) {
  if (!(t_gt > 0.0) || !std::isfinite(t_gt)) {
    throw ValidationError("source duration must be positive, got " + std::to_string(t_gt));
  }
  DurationDraw d;
  std::tie(d.lower, d.upper) = DurationInterval(t_gt, config.alpha, config.beta);
  if (d.lower > d.upper) {
    d.seconds = d.lower;
    d.clamped = true;
    return d;
  }
  d.seconds = rng.Uniform(d.lower, d.upper);
  return d;
}

std::vector<std::pair<std::int64_t, std::int64_t>> TimelinePlan::Gaps() const {
  std::vector<std::pair<std::int64_t, std::int64_t>> gaps;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    gaps.emplace_back(entries[i - 1].end_cs, entries[i].start_cs);
  }
  return gaps;
}

namespace {

// Planned length in whole centiseconds, kept inside [lower, upper] when the
// interval contains a centisecond value.
std::int64_t QuantizeDuration(const DurationDraw& d) {
  std::int64_t cs = std::llround(d.seconds * 100.0);
  const auto lo = static_cast<std::int64_t>(std::ceil(d.lower * 100.0 - 1e-9));
  const auto hi = static_cast<std::int64_t>(std::floor(d.upper * 100.0 + 1e-9));
  if (lo <= hi) cs = std::clamp(cs, lo, hi);
  return std::max<std::int64_t>(cs, 1);
}

}  // namespace

PlannedSequence PlanTimeline(std::span<const AtomicEntry> pool, const CompositionConfig& config,
                             Rng& rng, std::string sequence_id) {
  config.Validate();
  if (pool.size() < static_cast<std::size_t>(config.k_max)) {
    throw ValidationError("pool has " + std::to_string(pool.size()) +
                          " atomics, composition needs at least k_max = " +
                          std::to_string(config.k_max));
  }
  const auto k = static_cast<std::size_t>(rng.UniformInt(config.k_min, config.k_max));
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first k slots are a uniform sample without replacement.
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(
        rng.UniformInt(static_cast<std::int64_t>(i), static_cast<std::int64_t>(pool.size()) - 1));
    std::swap(order[i], order[j]);
  }

  const std::int64_t transition_cs = std::llround(config.transition_s * 100.0);
  PlannedSequence out;
  out.annotation.sequence_id = std::move(sequence_id);
  std::int64_t cursor = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const AtomicEntry& atomic = pool[order[i]];
    const DurationDraw draw = SampleDuration(atomic.gt_duration_s, config, rng);
    const std::int64_t length = QuantizeDuration(draw);
    if (i > 0) cursor += transition_cs;
    PlanEntry entry{order[i], atomic.id, static_cast<double>(length) / 100.0, cursor,
                    cursor + length};
    cursor += length;
    out.annotation.segments.push_back(
        {Timestamp(entry.start_cs), Timestamp(entry.end_cs), atomic.caption});
    out.plan.entries.push_back(std::move(entry));
  }
  out.plan.total_duration_cs = cursor;
  out.annotation.duration = Timestamp(cursor);
  return out;
}

FilterResult FilterPool(std::span<const AtomicEntry> pool, double min_alignment) {
  FilterResult out;
  for (const auto& a : pool) {
    const std::string source = AtomicSourceName(a.source);
    if (!a.alignment_score) {
      out.unscored_ids.push_back(a.id);
      out.kept.push_back(a);
      ++out.kept_by_source[source];
    } else if (*a.alignment_score >= min_alignment) {
      out.kept.push_back(a);
      ++out.kept_by_source[source];
    } else {
      ++out.removed_by_source[source];
    }
  }
  if (!out.unscored_ids.empty()) {
    out.warnings.push_back(std::to_string(out.unscored_ids.size()) +
                           " atomics have no alignment score and were kept");
  }
  if (out.kept.empty()) out.warnings.push_back("alignment filter removed every atomic");
  return out;
}

const char* SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "unknown";
}

std::uint64_t SequenceSeed(std::uint64_t seed, std::size_t index) { return MixSeed(seed, index); }

Dataset BuildDataset(std::span<const AtomicEntry> pool, std::size_t count,
                     const CompositionConfig& config, std::size_t threads) {
  config.Validate();
  Dataset data;
  data.manifest.config = config;
  data.manifest.pool_size = pool.size();
  data.sequences.resize(count);
  data.manifest.sequences.resize(count);

  ParallelFor(count, threads, [&](std::size_t i) {
    char id[32];
    std::snprintf(id, sizeof(id), "seq_%06zu", i);
    const std::uint64_t seed = SequenceSeed(config.seed, i);
    Rng rng(seed);
    data.sequences[i] = PlanTimeline(pool, config, rng, id);
    const auto& plan = data.sequences[i].plan;
    ManifestEntry& m = data.manifest.sequences[i];
    m.id = id;
    m.seed = seed;
    for (const auto& e : plan.entries) {
      m.atomic_ids.push_back(e.atomic_id);
      m.planned_durations_s.push_back(e.planned_duration_s);
    }
    m.duration_cs = plan.total_duration_cs;
    m.gaps_cs = plan.Gaps();
  });

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng split_rng(MixSeed(config.seed, ~std::uint64_t{0}));
  split_rng.Shuffle(std::span<std::size_t>(order));
  const auto n_train = static_cast<std::size_t>(std::llround(config.split_ratios[0] * count));
  const auto n_val = std::min(count - std::min(count, n_train),
                              static_cast<std::size_t>(std::llround(config.split_ratios[1] * count)));
  for (std::size_t k = 0; k < count; ++k) {
    const Split s = k < n_train ? Split::kTrain : (k < n_train + n_val ? Split::kVal : Split::kTest);
    data.manifest.sequences[order[k]].split = s;
  }
  return data;
}

double ExpectedSequenceDuration(std::span<const AtomicEntry> pool, const CompositionConfig& config) {
  if (pool.empty()) return 0.0;
  double mean_t = 0.0;
  for (const auto& a : pool) {
    const auto [lo, hi] = DurationInterval(a.gt_duration_s, config.alpha, config.beta);
    mean_t += lo > hi ? lo : 0.5 * (lo + hi);
  }
  mean_t /= static_cast<double>(pool.size());
  const double mean_k = 0.5 * (config.k_min + config.k_max);
  return mean_k * mean_t + (mean_k - 1.0) * config.transition_s;
}

nlohmann::json DatasetManifest::ToJson() const {
  nlohmann::json seqs = nlohmann::json::array();
  std::map<std::string, std::size_t> split_counts = {{"train", 0}, {"val", 0}, {"test", 0}};
  for (const auto& s : sequences) {
    ++split_counts[SplitName(s.split)];
    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& [a, b] : s.gaps_cs) gaps.push_back({a, b});
    seqs.push_back({{"id", s.id},
                    {"seed", s.seed},
                    {"split", SplitName(s.split)},
                    {"atomic_ids", s.atomic_ids},
                    {"planned_durations_s", s.planned_durations_s},
                    {"duration_cs", s.duration_cs},
                    {"gaps_cs", std::move(gaps)}});
  }
  return {{"schema_version", 1},
          {"config", config.ToJson()},
          {"pool_size", pool_size},
          {"split_counts", split_counts},
          {"sequences", std::move(seqs)}};
}

std::vector<AtomicEntry> LoadPool(const std::filesystem::path& pool_path,
                                  const std::filesystem::path& motion_dir, bool load_motions) {
  std::istringstream in(ReadTextFile(pool_path));
  std::vector<AtomicEntry> pool;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("json", e.what(), line_no);
    }
    auto field = [&](const char* key) -> const nlohmann::json& {
      if (!j.contains(key)) throw ParseError(key, "missing", line_no);
      return j[key];
    };
    AtomicEntry a;
    try {
      a.id = field("id").get<std::string>();
      a.caption = field("caption").get<std::string>();
      a.gt_duration_s = field("gt_duration_s").get<double>();
      a.source = ParseAtomicSource(field("source").get<std::string>());
      if (j.contains("alignment_score") && !j["alignment_score"].is_null()) {
        a.alignment_score = j["alignment_score"].get<double>();
      }
      if (load_motions) {
        std::filesystem::path p = field("motion_path").get<std::string>();
        if (p.is_relative()) p = motion_dir / p;
        a.motion = LoadMotion(p);
      }
    } catch (const nlohmann::json::type_error& e) {
      throw ParseError("pool", e.what(), line_no);
    }
    ValidateAtomic(a);
    pool.push_back(std::move(a));
  }
  return pool;
}

}  // namespace dmc
