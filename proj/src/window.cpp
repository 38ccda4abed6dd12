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

#include "dmc/window.hpp"

#include <algorithm>
#include <string>

#include "dmc/error.hpp"

namespace dmc {

std::vector<WindowSpan> WindowSpans(std::size_t num_frames, std::size_t window,
                                    std::size_t stride) {
  if (window < 1) throw ValidationError("window size must be at least 1");
  if (stride < 1 || stride >= window) {
    throw ValidationError("window stride must satisfy 1 <= S < W, got S=" +
                          std::to_string(stride) + ", W=" + std::to_string(window));
  }
  std::vector<WindowSpan> spans;
  if (num_frames < window) {
    spans.push_back({0, num_frames});
    return spans;
  }
  for (std::size_t start = 0; start + window <= num_frames; start += stride) {
    spans.push_back({start, window});
  }
  if (spans.back().start + window < num_frames) spans.push_back({num_frames - window, window});
  return spans;
}

std::vector<MotionWindow> WindowMotion(const MotionSequence& motion, std::size_t window,
                                       std::size_t stride) {
  const std::size_t frame_values = motion.frame_stride();
  std::vector<MotionWindow> out;
  for (const auto& span : WindowSpans(motion.num_frames(), window, stride)) {
    MotionWindow w{span.start, std::vector<float>(window * frame_values, 0.0f),
                   std::vector<bool>(window, true)};
    const auto src = motion.positions().subspan(span.start * frame_values,
                                                span.valid_frames * frame_values);
    std::copy(src.begin(), src.end(), w.values.begin());
    std::fill_n(w.padding.begin(), span.valid_frames, false);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace dmc
