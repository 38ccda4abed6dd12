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

#include "dmc/timestamp.hpp"

#include <cmath>
#include <cstdio>

#include "dmc/error.hpp"

namespace dmc {

Timestamp::Timestamp(std::int64_t centiseconds) : cs_(centiseconds) {
  if (centiseconds < 0) {
    throw RangeError("timestamp must be non-negative, got " +
                     std::to_string(centiseconds) + " cs");
  }
}

Timestamp Timestamp::FromSeconds(double seconds) {
  if (!std::isfinite(seconds) || seconds < 0.0) {
    throw RangeError("timestamp seconds must be finite and non-negative");
  }
  return Timestamp(std::llround(seconds * kCentisecondsPerSecond));
}

namespace {

int ParseTwoDigits(std::string_view field, const char* name) {
  if (field.size() != 2) {
    throw ParseError(name, "expected two digits, got \"" + std::string(field) +
                               "\"");
  }
  for (char c : field) {
    if (c < '0' || c > '9') {
      throw ParseError(name, "non-digit character in \"" + std::string(field) +
                                 "\"");
    }
  }
  return (field[0] - '0') * 10 + (field[1] - '0');
}

}  // namespace

Timestamp ParseTimestamp(std::string_view text) {
  std::string_view parts[3];
  std::size_t count = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      if (count == 3) {
        throw ParseError("timestamp", "expected 3 fields in \"" +
                                          std::string(text) + "\"");
      }
      parts[count++] = text.substr(begin, i - begin);
      begin = i + 1;
    }
  }
  if (count != 3) {
    throw ParseError("timestamp",
                     "expected 3 fields in \"" + std::string(text) + "\"");
  }
  const int minutes = ParseTwoDigits(parts[0], "minutes");
  const int seconds = ParseTwoDigits(parts[1], "seconds");
  const int hundredths = ParseTwoDigits(parts[2], "centiseconds");
  if (seconds >= 60) {
    throw ParseError("seconds", "must be below 60, got " + std::to_string(seconds));
  }
  // Two digits cannot exceed 99; the check is kept for an explicit contract.
  if (hundredths >= 100) {
    throw ParseError("centiseconds",
                     "must be below 100, got " + std::to_string(hundredths));
  }
  return Timestamp(minutes * 6000 + seconds * 100 + hundredths);
}

std::string FormatTimestamp(Timestamp t) {
  const std::int64_t cs = t.centiseconds();
  if (cs >= Timestamp::kFormatLimit) {
    throw RangeError("timestamp " + std::to_string(cs) +
                     " cs is not representable as MM:SS:CC");
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", static_cast<int>(cs / 6000),
                static_cast<int>((cs / 100) % 60), static_cast<int>(cs % 100));
  return std::string(buf, 8);
}

}  // namespace dmc
