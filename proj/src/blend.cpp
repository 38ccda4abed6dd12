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

#include "dmc/blend.hpp"

#include <algorithm>
#include <cmath>

#include "dmc/error.hpp"

namespace dmc {

SeamMode ParseSeamMode(const std::string& name) {
  if (name == "hard") return SeamMode::kHard;
  if (name == "blend") return SeamMode::kBlend;
  throw ValidationError("unknown seam mode '" + name + "' (expected hard or blend)");
}

double SmoothStep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

MotionSequence FitToFrames(const MotionSequence& clip, std::size_t frames) {
  if (frames == 0) throw ValidationError("cannot fit a clip to zero frames");
  const std::size_t stride = clip.frame_stride();
  const std::size_t src = clip.num_frames();
  std::vector<float> out(frames * stride);
  const auto positions = clip.positions();
  if (frames <= src) {
    std::copy_n(positions.begin(), frames * stride, out.begin());
  } else {
    for (std::size_t k = 0; k < frames; ++k) {
      // Exact rational position k * (src - 1) / (frames - 1).
      const std::size_t num = k * (src - 1);
      const std::size_t lo = num / (frames - 1);
      const std::size_t rem = num % (frames - 1);
      if (rem == 0) {
        std::copy_n(positions.begin() + lo * stride, stride, out.begin() + k * stride);
        continue;
      }
      const double w = static_cast<double>(rem) / static_cast<double>(frames - 1);
      for (std::size_t v = 0; v < stride; ++v) {
        const double a = positions[lo * stride + v];
        const double b = positions[(lo + 1) * stride + v];
        out[k * stride + v] = static_cast<float>((1.0 - w) * a + w * b);
      }
    }
  }
  return MotionSequence(clip.id(), frames, clip.num_joints(), clip.frame_rate_hz(),
                        std::move(out));
}

std::size_t FrameAt(std::int64_t cs, double frame_rate_hz) {
  return static_cast<std::size_t>(std::llround(static_cast<double>(cs) * frame_rate_hz / 100.0));
}

namespace {

struct PlacedClip {
  std::size_t first_frame;
  MotionSequence clip;
};

struct SeamGeometry {
  std::size_t tail;  // frames taken from the end of the preceding clip
  std::size_t gap;
  std::size_t head;  // frames taken from the start of the following clip
};

SeamGeometry Geometry(const PlacedClip& a, const PlacedClip& b, const CompositionConfig& config) {
  const auto half = static_cast<std::size_t>(config.blend_frames / 2);
  const std::size_t a_end = a.first_frame + a.clip.num_frames();
  // Halving keeps the seams on either side of a short clip from overlapping.
  return {std::min(half, a.clip.num_frames() / 2), b.first_frame - a_end,
          std::min(half, b.clip.num_frames() / 2)};
}

std::vector<PlacedClip> PlaceClips(const TimelinePlan& plan, std::span<const AtomicEntry> pool,
                                   double fps) {
  std::vector<PlacedClip> placed;
  for (const auto& e : plan.entries) {
    const std::size_t first = FrameAt(e.start_cs, fps);
    const std::size_t last = FrameAt(e.end_cs, fps);
    if (last <= first) {
      throw ValidationError("segment of atomic '" + e.atomic_id + "' is shorter than one frame");
    }
    placed.push_back({first, FitToFrames(pool[e.atomic_index].motion, last - first)});
  }
  return placed;
}

}  // namespace

std::vector<BlendSpan> BlendSpans(const TimelinePlan& plan, double frame_rate_hz,
                                  const CompositionConfig& config) {
  std::vector<BlendSpan> spans;
  for (std::size_t i = 1; i < plan.entries.size(); ++i) {
    const auto& a = plan.entries[i - 1];
    const auto& b = plan.entries[i];
    const std::size_t a_first = FrameAt(a.start_cs, frame_rate_hz);
    const std::size_t a_end = FrameAt(a.end_cs, frame_rate_hz);
    const std::size_t b_first = FrameAt(b.start_cs, frame_rate_hz);
    const std::size_t b_end = FrameAt(b.end_cs, frame_rate_hz);
    const auto half = static_cast<std::size_t>(config.blend_frames / 2);
    const std::size_t tail = std::min(half, (a_end - a_first) / 2);
    const std::size_t head = std::min(half, (b_end - b_first) / 2);
    const std::size_t length = tail + (b_first - a_end) + head;
    if (length < 2) continue;
    spans.push_back({a_end - tail, b_first + head - 1});
  }
  return spans;
}

MotionSequence ConcatMotions(const TimelinePlan& plan, std::span<const AtomicEntry> pool,
                             SeamMode mode, const CompositionConfig& config,
                             std::string sequence_id) {
  if (plan.entries.empty()) throw ValidationError("cannot concatenate an empty plan");
  for (const auto& e : plan.entries) {
    if (e.atomic_index >= pool.size()) {
      throw ValidationError("plan references atomic index " + std::to_string(e.atomic_index) +
                            " outside the pool");
    }
  }
  const MotionSequence& first = pool[plan.entries.front().atomic_index].motion;
  const double fps = first.frame_rate_hz();
  const std::size_t joints = first.num_joints();
  for (const auto& e : plan.entries) {
    const auto& m = pool[e.atomic_index].motion;
    if (m.num_joints() != joints || m.frame_rate_hz() != fps) {
      throw ValidationError("atomic '" + e.atomic_id + "' has " + std::to_string(m.num_joints()) +
                            " joints at " + std::to_string(m.frame_rate_hz()) +
                            " Hz; expected " + std::to_string(joints) + " at " +
                            std::to_string(fps) + " Hz");
    }
  }

  const std::size_t total = FrameAt(plan.total_duration_cs, fps);
  const std::size_t stride = joints * 3;
  const auto placed = PlaceClips(plan, pool, fps);
  std::vector<float> out(total * stride, 0.0f);
  auto frame_ptr = [&](std::size_t f) { return out.begin() + static_cast<std::ptrdiff_t>(f * stride); };

  for (const auto& p : placed) {
    std::copy(p.clip.positions().begin(), p.clip.positions().end(), frame_ptr(p.first_frame));
  }

  for (std::size_t i = 1; i < placed.size(); ++i) {
    const PlacedClip& a = placed[i - 1];
    const PlacedClip& b = placed[i];
    const SeamGeometry g = Geometry(a, b, config);
    const std::size_t a_end = a.first_frame + a.clip.num_frames();
    const std::size_t length = g.tail + g.gap + g.head;

    if (mode == SeamMode::kHard || length < 2) {
      const auto from = a.clip.frame(a.clip.num_frames() - 1);
      const auto to = b.clip.frame(0);
      for (std::size_t k = 0; k < g.gap; ++k) {
        const double t = static_cast<double>(k + 1) / static_cast<double>(g.gap + 1);
        auto dst = frame_ptr(a_end + k);
        for (std::size_t v = 0; v < stride; ++v) {
          dst[static_cast<std::ptrdiff_t>(v)] = static_cast<float>((1.0 - t) * from[v] + t * to[v]);
        }
      }
      continue;
    }

    const std::size_t region_first = a_end - g.tail;
    const std::size_t a_local_first = a.clip.num_frames() - g.tail;
    for (std::size_t k = 0; k < length; ++k) {
      // Poses past the end of A hold its last frame; poses before B hold its first.
      const std::size_t a_local = std::min(a_local_first + k, a.clip.num_frames() - 1);
      const std::size_t b_local = k >= g.tail + g.gap ? k - g.tail - g.gap : 0;
      const auto pa = a.clip.frame(a_local);
      const auto pb = b.clip.frame(std::min(b_local, b.clip.num_frames() - 1));
      auto dst = frame_ptr(region_first + k);
      if (k == 0) {
        std::copy(pa.begin(), pa.end(), dst);
        continue;
      }
      if (k + 1 == length) {
        std::copy(pb.begin(), pb.end(), dst);
        continue;
      }
      const double w = SmoothStep(static_cast<double>(k) / static_cast<double>(length - 1));
      for (std::size_t v = 0; v < stride; ++v) {
        dst[static_cast<std::ptrdiff_t>(v)] = static_cast<float>((1.0 - w) * pa[v] + w * pb[v]);
      }
    }
  }
  return MotionSequence(std::move(sequence_id), total, joints, fps, std::move(out));
}

Quaternion Normalize(const Quaternion& q) {
  const double n = std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
  if (n == 0.0) throw ValidationError("cannot normalize a zero quaternion");
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

Quaternion Slerp(const Quaternion& a_in, const Quaternion& b_in, double t) {
  const Quaternion a = Normalize(a_in);
  Quaternion b = Normalize(b_in);
  double dot = a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
  if (dot < 0.0) {
    b = {-b.w, -b.x, -b.y, -b.z};
    dot = -dot;
  }
  if (dot > 0.9995) {
    return Normalize({a.w + t * (b.w - a.w), a.x + t * (b.x - a.x), a.y + t * (b.y - a.y),
                      a.z + t * (b.z - a.z)});
  }
  const double theta = std::acos(std::min(dot, 1.0));
  const double s = std::sin(theta);
  const double wa = std::sin((1.0 - t) * theta) / s;
  const double wb = std::sin(t * theta) / s;
  return {wa * a.w + wb * b.w, wa * a.x + wb * b.x, wa * a.y + wb * b.y, wa * a.z + wb * b.z};
}

std::vector<Quaternion> BlendRotationSeam(std::span<const Quaternion> outgoing,
                                          std::span<const Quaternion> incoming) {
  if (outgoing.empty() || incoming.empty()) {
    throw ValidationError("rotation seam needs frames on both sides");
  }
  const std::size_t length = outgoing.size() + incoming.size();
  std::vector<Quaternion> out(length);
  for (std::size_t k = 0; k < length; ++k) {
    const Quaternion& a = outgoing[std::min(k, outgoing.size() - 1)];
    const Quaternion& b = incoming[k < outgoing.size() ? 0 : k - outgoing.size()];
    if (k == 0) {
      out[k] = a;
    } else if (k + 1 == length) {
      out[k] = b;
    } else {
      out[k] = Slerp(a, b, SmoothStep(static_cast<double>(k) / static_cast<double>(length - 1)));
    }
  }
  return out;
}

}  // namespace dmc
