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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dmc {

/// A point on a sequence's time axis in integer centiseconds.
///
/// The textual form is "MM:SS:CC" where the last field counts hundredths of a
/// second. Only values below 100 minutes have a textual form.
class Timestamp {
 public:
  static constexpr std::int64_t kCentisecondsPerSecond = 100;
  static constexpr std::int64_t kFormatLimit = 100 * 60 * kCentisecondsPerSecond;

  constexpr Timestamp() = default;
  explicit Timestamp(std::int64_t centiseconds);

  /// Rounds to the nearest centisecond.
  static Timestamp FromSeconds(double seconds);

  constexpr std::int64_t centiseconds() const { return cs_; }
  constexpr double seconds() const {
    return static_cast<double>(cs_) / kCentisecondsPerSecond;
  }

  friend constexpr auto operator<=>(Timestamp, Timestamp) = default;

 private:
  std::int64_t cs_ = 0;
};

/// Parses "MM:SS:CC". Throws ParseError naming the offending field.
Timestamp ParseTimestamp(std::string_view text);

/// Renders as zero-padded "MM:SS:CC". Throws RangeError at or above
/// Timestamp::kFormatLimit.
std::string FormatTimestamp(Timestamp t);

}  // namespace dmc
