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
#include <vector>

#include "dmc/motion.hpp"

namespace dmc {

inline constexpr std::size_t kDefaultWindowSize = 16;
inline constexpr std::size_t kDefaultWindowStride = 8;

struct WindowSpan {
  std::size_t start;
  std::size_t valid_frames;  // < window size only when the sequence is shorter
};

/// Starts 0, S, 2S, ... while a full window fits. A final window ending at the
/// last frame is added when the stride grid leaves frames uncovered. Sequences
/// shorter than W give one window that is padded past N.
/// Throws ValidationError unless W >= 1 and 1 <= S < W.
std::vector<WindowSpan> WindowSpans(std::size_t num_frames, std::size_t window = kDefaultWindowSize,
                                    std::size_t stride = kDefaultWindowStride);

struct MotionWindow {
  std::size_t start;
  std::vector<float> values;  // window * J * 3, zero past the sequence end
  std::vector<bool> padding;  // one flag per window frame
};

std::vector<MotionWindow> WindowMotion(const MotionSequence& motion,
                                       std::size_t window = kDefaultWindowSize,
                                       std::size_t stride = kDefaultWindowStride);

}  // namespace dmc
