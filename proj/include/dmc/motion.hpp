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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dmc {

inline constexpr double kDefaultFrameRateHz = 20.0;
inline constexpr std::size_t kDefaultJointCount = 22;

/// N x J x 3 joint positions in meters, stored frame-major.
class MotionSequence {
 public:
  MotionSequence() = default;

  /// Throws ValidationError unless N >= 1, J >= 1, frame_rate_hz > 0, the
  /// buffer holds N*J*3 values and every value is finite. The frame rate is
  /// kept at f32 precision so the binary format round-trips it exactly.
  MotionSequence(std::string id, std::size_t num_frames, std::size_t num_joints,
                 double frame_rate_hz, std::vector<float> positions);

  /// All-zero sequence.
  static MotionSequence Zeros(std::string id, std::size_t num_frames,
                              std::size_t num_joints,
                              double frame_rate_hz = kDefaultFrameRateHz);

  const std::string& id() const { return id_; }
  std::size_t num_frames() const { return num_frames_; }
  std::size_t num_joints() const { return num_joints_; }
  double frame_rate_hz() const { return frame_rate_hz_; }
  double duration_s() const { return num_frames_ / frame_rate_hz_; }

  /// Values per frame, J * 3.
  std::size_t frame_stride() const { return num_joints_ * 3; }

  std::span<const float> positions() const { return positions_; }
  std::span<const float> frame(std::size_t i) const {
    return std::span<const float>(positions_).subspan(i * frame_stride(),
                                                      frame_stride());
  }
  std::array<float, 3> joint(std::size_t frame_index, std::size_t joint_index) const;

  friend bool operator==(const MotionSequence&, const MotionSequence&) = default;

 private:
  std::string id_;
  std::size_t num_frames_ = 0;
  std::size_t num_joints_ = 0;
  double frame_rate_hz_ = kDefaultFrameRateHz;
  std::vector<float> positions_;
};

MotionSequence LoadMotion(const std::filesystem::path& path);
void SaveMotion(const MotionSequence& motion, const std::filesystem::path& path);

/// In-memory codec behind LoadMotion/SaveMotion.
std::vector<unsigned char> EncodeMotion(const MotionSequence& motion);
MotionSequence DecodeMotion(std::span<const unsigned char> bytes);

enum class AtomicSource { kGenerated, kMocap };

const char* AtomicSourceName(AtomicSource source);
AtomicSource ParseAtomicSource(const std::string& name);

/// A single-action clip, the unit of composition.
struct AtomicEntry {
  std::string id;
  std::string caption;
  double gt_duration_s = 0.0;
  AtomicSource source = AtomicSource::kGenerated;
  std::optional<double> alignment_score;
  MotionSequence motion;
};

/// Checks gt_duration_s > 0, agreement with the motion duration within one
/// frame, and the alignment score range. Throws ValidationError.
void ValidateAtomic(const AtomicEntry& entry);

}  // namespace dmc
