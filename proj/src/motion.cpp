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

#include "dmc/motion.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "dmc/error.hpp"
#include "dmc/file_util.hpp"

namespace dmc {

namespace {

constexpr unsigned char kMagic[4] = {'D', 'M', 'C', '1'};
constexpr std::size_t kFixedHeaderBytes = 4 + 4 + 4 + 4 + 2;

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

template <typename T>
void PutLittle(std::vector<unsigned char>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 2, std::uint16_t, std::uint32_t>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xFFu));
  }
}

template <typename T>
T GetLittle(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 2, std::uint16_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bits |= static_cast<U>(static_cast<U>(p[i]) << (8 * i));
  }
  return std::bit_cast<T>(bits);
}

}  // namespace

MotionSequence::MotionSequence(std::string id, std::size_t num_frames,
                               std::size_t num_joints, double frame_rate_hz,
                               std::vector<float> positions)
    : id_(std::move(id)),
      num_frames_(num_frames),
      num_joints_(num_joints),
      frame_rate_hz_(static_cast<float>(frame_rate_hz)),
      positions_(std::move(positions)) {
  if (num_frames_ == 0 || num_joints_ == 0) {
    throw ValidationError("motion '" + id_ + "' must have N >= 1 and J >= 1");
  }
  if (!(frame_rate_hz_ > 0.0) || !std::isfinite(frame_rate_hz_)) {
    throw ValidationError("motion '" + id_ + "' frame rate must be positive");
  }
  if (positions_.size() != num_frames_ * num_joints_ * 3) {
    throw ValidationError("motion '" + id_ + "' holds " +
                          std::to_string(positions_.size()) +
                          " values, expected N*J*3 = " +
                          std::to_string(num_frames_ * num_joints_ * 3));
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!std::isfinite(positions_[i])) {
      throw ValidationError("motion '" + id_ + "' has a non-finite value at flat index " +
                            std::to_string(i));
    }
  }
}

MotionSequence MotionSequence::Zeros(std::string id, std::size_t num_frames,
                                     std::size_t num_joints, double frame_rate_hz) {
  return MotionSequence(std::move(id), num_frames, num_joints, frame_rate_hz,
                        std::vector<float>(num_frames * num_joints * 3, 0.0f));
}

std::array<float, 3> MotionSequence::joint(std::size_t frame_index,
                                           std::size_t joint_index) const {
  const std::size_t base = frame_index * frame_stride() + joint_index * 3;
  return {positions_[base], positions_[base + 1], positions_[base + 2]};
}

std::vector<unsigned char> EncodeMotion(const MotionSequence& motion) {
  if (motion.id().size() > 0xFFFFu) {
    throw RangeError("motion id longer than 65535 bytes");
  }
  std::vector<unsigned char> out;
  out.reserve(kFixedHeaderBytes + motion.id().size() + motion.positions().size() * 4);
  for (unsigned char c : kMagic) out.push_back(c);
  PutLittle(out, static_cast<std::uint32_t>(motion.num_frames()));
  PutLittle(out, static_cast<std::uint32_t>(motion.num_joints()));
  PutLittle(out, static_cast<float>(motion.frame_rate_hz()));
  PutLittle(out, static_cast<std::uint16_t>(motion.id().size()));
  for (char c : motion.id()) out.push_back(static_cast<unsigned char>(c));
  for (float v : motion.positions()) PutLittle(out, v);
  return out;
}

MotionSequence DecodeMotion(std::span<const unsigned char> bytes) {
  using Kind = MotionFormatError::Kind;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw MotionFormatError(Kind::kBadMagic, "missing DMC1 magic");
  }
  if (bytes.size() < kFixedHeaderBytes) {
    throw MotionFormatError(Kind::kTruncated, "truncated header");
  }
  const unsigned char* p = bytes.data() + 4;
  const auto num_frames = GetLittle<std::uint32_t>(p);
  const auto num_joints = GetLittle<std::uint32_t>(p + 4);
  const auto frame_rate = GetLittle<float>(p + 8);
  const auto id_length = GetLittle<std::uint16_t>(p + 12);
  if (bytes.size() < kFixedHeaderBytes + id_length) {
    throw MotionFormatError(Kind::kTruncated, "truncated id");
  }
  std::string id(reinterpret_cast<const char*>(bytes.data() + kFixedHeaderBytes),
                 id_length);

  const std::size_t values = static_cast<std::size_t>(num_frames) * num_joints * 3;
  const std::size_t payload_offset = kFixedHeaderBytes + id_length;
  const std::size_t payload_bytes = bytes.size() - payload_offset;
  if (payload_bytes < values * 4) {
    throw MotionFormatError(
        Kind::kTruncated,
        "payload holds " + std::to_string(payload_bytes / 4) +
            " values, header declares N*J*3 = " + std::to_string(values));
  }
  if (payload_bytes != values * 4) {
    throw MotionFormatError(
        Kind::kSizeMismatch,
        "payload has " + std::to_string(payload_bytes - values * 4) +
            " trailing bytes beyond N*J*3 = " + std::to_string(values) + " values");
  }
  if (num_frames == 0 || num_joints == 0 || !(frame_rate > 0.0f) ||
      !std::isfinite(frame_rate)) {
    throw MotionFormatError(Kind::kSizeMismatch,
                            "header requires N >= 1, J >= 1 and a positive frame rate");
  }

  std::vector<float> positions(values);
  const unsigned char* payload = bytes.data() + payload_offset;
  for (std::size_t i = 0; i < values; ++i) {
    positions[i] = GetLittle<float>(payload + 4 * i);
    if (!std::isfinite(positions[i])) {
      throw MotionFormatError(Kind::kNonFinite,
                              "non-finite value at flat index " + std::to_string(i));
    }
  }
  return MotionSequence(std::move(id), num_frames, num_joints, frame_rate,
                        std::move(positions));
}

MotionSequence LoadMotion(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open motion file " + path.string());
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
  return DecodeMotion(bytes);
}

void SaveMotion(const MotionSequence& motion, const std::filesystem::path& path) {
  const auto bytes = EncodeMotion(motion);
  WriteFileAtomically(path, std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                             bytes.size()));
}

const char* AtomicSourceName(AtomicSource source) {
  return source == AtomicSource::kGenerated ? "generated" : "mocap";
}

AtomicSource ParseAtomicSource(const std::string& name) {
  if (name == "generated") return AtomicSource::kGenerated;
  if (name == "mocap") return AtomicSource::kMocap;
  throw ValidationError("unknown atomic source '" + name +
                        "' (expected generated or mocap)");
}

void ValidateAtomic(const AtomicEntry& entry) {
  if (!(entry.gt_duration_s > 0.0) || !std::isfinite(entry.gt_duration_s)) {
    throw ValidationError("atomic '" + entry.id + "' gt_duration_s must be positive");
  }
  if (entry.alignment_score &&
      (!(std::abs(*entry.alignment_score) <= 1.0))) {
    throw ValidationError("atomic '" + entry.id + "' alignment score outside [-1, 1]");
  }
  if (entry.motion.num_frames() > 0) {
    const double frame = 1.0 / entry.motion.frame_rate_hz();
    if (std::abs(entry.motion.duration_s() - entry.gt_duration_s) > frame + 1e-9) {
      throw ValidationError("atomic '" + entry.id + "' gt_duration_s " +
                            std::to_string(entry.gt_duration_s) +
                            " disagrees with motion duration " +
                            std::to_string(entry.motion.duration_s()));
    }
  }
}

}  // namespace dmc
