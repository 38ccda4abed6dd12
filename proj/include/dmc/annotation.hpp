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
#include <filesystem>
#include <string>
#include <vector>

#include "dmc/timestamp.hpp"

namespace dmc {

/// Half-open interval [start, end) with a caption.
struct TimedSegment {
  Timestamp start;
  Timestamp end;
  std::string caption;

  std::int64_t length_cs() const { return end.centiseconds() - start.centiseconds(); }

  friend bool operator==(const TimedSegment&, const TimedSegment&) = default;
};

struct DenseAnnotation {
  std::string sequence_id;
  Timestamp duration;
  std::vector<TimedSegment> segments;

  std::size_t size() const { return segments.size(); }
  bool empty() const { return segments.empty(); }

  friend bool operator==(const DenseAnnotation&, const DenseAnnotation&) = default;
};

enum class ViolationRule {
  kEmptyCaption,
  kNonPositiveLength,
  kEndExceedsDuration,
  kUnsorted,
  kOverlap,
};

const char* ViolationRuleName(ViolationRule rule);

struct Violation {
  std::size_t segment_index;
  ViolationRule rule;
  std::string message;
};

/// Lists every broken invariant. With `strict_nonoverlap`, segment i must not
/// start before segment i-1 ends.
std::vector<Violation> ValidateAnnotation(const DenseAnnotation& annotation,
                                          bool strict_nonoverlap);

/// Line-delimited JSON:
///   {"id": str, "duration_cs": int, "segments": [{"start_cs", "end_cs", "caption"}]}
/// Readers throw ParseError carrying the 1-based line number on malformed
/// lines. Blank lines are skipped.
std::vector<DenseAnnotation> ParseAnnotationLines(const std::string& text);
std::string AnnotationToJsonLine(const DenseAnnotation& annotation);
std::vector<DenseAnnotation> ReadAnnotationFile(const std::filesystem::path& path);
std::string DumpAnnotationLines(const std::vector<DenseAnnotation>& annotations);

}  // namespace dmc
