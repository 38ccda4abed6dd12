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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dmc/annotation.hpp"

namespace dmc {

enum class ParseMode { kStrict, kLenient };

struct ParseWarning {
  std::size_t line;  // 1-based
  std::string message;
};

struct ParseOutcome {
  DenseAnnotation annotation;
  std::vector<ParseWarning> warnings;
  std::size_t dropped_lines = 0;
};

/// Parses "MM:SS:CC – caption" entries separated by commas or newlines.
///
/// Only start times are written in this grammar, so segment i ends where
/// segment i+1 starts and the last segment ends at `total_duration`.
/// Strict mode accepts only the en-dash separator and throws ParseError on the
/// first bad entry.  Lenient mode also accepts "-" and ":", skips preamble
/// text, and drops malformed or out-of-order entries with a warning.
ParseOutcome ParseDenseText(std::string_view text, Timestamp total_duration,
                            ParseMode mode, std::string sequence_id = {});

/// Start times only, en-dash separated, joined by ", ". Gaps between
/// segments are not representable and are lost.
std::string SerializeDenseText(const DenseAnnotation& annotation);

/// Same timestamps, captions permuted by a seeded uniform non-identity
/// permutation. Throws ValidationError for fewer than two segments.
DenseAnnotation ShuffleSegmentCaptions(const DenseAnnotation& annotation,
                                       std::uint64_t seed);

}  // namespace dmc
