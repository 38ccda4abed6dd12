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
#include <span>
#include <string>
#include <vector>

#include "dmc/compose.hpp"
#include "dmc/motion.hpp"

namespace dmc {

enum class SeamMode {
  /// Clips are left intact; transition gaps are a linear ramp between the
  /// boundary poses.
  kHard,
  /// The last blend_frames/2 frames of one clip, the gap, and the first
  /// blend_frames/2 frames of the next are cross-faded with smoothstep weights.
  kBlend,
};

SeamMode ParseSeamMode(const std::string& name);

/// 3t^2 - 2t^3 on [0, 1].
double SmoothStep(double t);

/// Fits a clip to `frames`: shorter targets keep the leading frames, longer
/// targets are linearly resampled with both end frames preserved.
MotionSequence FitToFrames(const MotionSequence& clip, std::size_t frames);

/// Frame index of a centisecond time at `frame_rate_hz`.
std::size_t FrameAt(std::int64_t cs, double frame_rate_hz);

/// Assembles the motion for a planned timeline. Output has
/// round(total_duration * fps) frames; all atomics must share J and fps.
/// Throws ValidationError.
MotionSequence ConcatMotions(const TimelinePlan& plan, std::span<const AtomicEntry> pool,
                             SeamMode mode, const CompositionConfig& config,
                             std::string sequence_id = {});

/// Frames [first, last] of each blended transition in the output of
/// ConcatMotions in kBlend mode, plus the clip frames they must equal.
struct BlendSpan {
  std::size_t first;
  std::size_t last;
};
std::vector<BlendSpan> BlendSpans(const TimelinePlan& plan, double frame_rate_hz,
                                  const CompositionConfig& config);

// ---------------------------------------------------------------------------
// Rotation seams

struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;
};

Quaternion Normalize(const Quaternion& q);

/// Shortest-arc spherical interpolation of unit quaternions.
Quaternion Slerp(const Quaternion& a, const Quaternion& b, double t);

/// Rotation counterpart of the kBlend seam for one joint: `outgoing` holds the
/// last frames of the preceding clip, `incoming` the first frames of the next.
/// Returns outgoing.size() + incoming.size() frames, slerped with smoothstep
/// weights; the first and last are copied unchanged.
std::vector<Quaternion> BlendRotationSeam(std::span<const Quaternion> outgoing,
                                          std::span<const Quaternion> incoming);

}  // namespace dmc
