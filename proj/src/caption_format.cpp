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

#include "dmc/caption_format.hpp"

#include <numeric>
#include <optional>

#include "dmc/error.hpp"
#include "dmc/rng.hpp"

namespace dmc {

namespace {

constexpr std::string_view kEnDash = "\xE2\x80\x93";
constexpr std::size_t kTimestampChars = 8;

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

// "dd:dd:dd" at `pos`, not embedded in a longer digit/colon run.
bool TimestampPatternAt(std::string_view line, std::size_t pos) {
  if (pos + kTimestampChars > line.size()) return false;
  static constexpr char kShape[] = "dd:dd:dd";
  for (std::size_t i = 0; i < kTimestampChars; ++i) {
    const char c = line[pos + i];
    if (kShape[i] == 'd' ? !IsDigit(c) : c != ':') return false;
  }
  if (pos > 0 && (IsDigit(line[pos - 1]) || line[pos - 1] == ':')) return false;
  const std::size_t after = pos + kTimestampChars;
  if (after < line.size() && (IsDigit(line[after]) || line[after] == ':')) {
    // A trailing ':' is a legitimate lenient separator ("00:01:00: jump").
    if (!(line[after] == ':' && (after + 1 == line.size() || !IsDigit(line[after + 1])))) {
      return false;
    }
  }
  return true;
}

// Entry starts: a timestamp at the first non-space position of the line or
// right after a comma (ignoring whitespace).
std::vector<std::size_t> EntryStarts(std::string_view line, bool lenient) {
  std::vector<std::size_t> starts;
  for (std::size_t pos = 0; pos + kTimestampChars <= line.size(); ++pos) {
    if (!TimestampPatternAt(line, pos)) continue;
    std::size_t k = pos;
    while (k > 0 && IsSpace(line[k - 1])) --k;
    if (k == 0 || line[k - 1] == ',') starts.push_back(pos);
  }
  if (starts.empty() && lenient) {
    for (std::size_t pos = 0; pos + kTimestampChars <= line.size(); ++pos) {
      if (TimestampPatternAt(line, pos)) {
        starts.push_back(pos);
        break;
      }
    }
  }
  return starts;
}

struct Entry {
  Timestamp start;
  std::string caption;
};

// Parses one "TS <sep> caption" piece. Throws ParseError.
Entry ParseEntry(std::string_view piece, bool lenient, std::size_t line_no) {
  Timestamp start;
  try {
    start = ParseTimestamp(piece.substr(0, kTimestampChars));
  } catch (const ParseError& e) {
    throw ParseError(e.field(), e.detail(), line_no);
  }
  std::string_view rest = piece.substr(kTimestampChars);
  while (!rest.empty() && IsSpace(rest.front())) rest.remove_prefix(1);
  bool separated = false;
  if (rest.starts_with(kEnDash)) {
    rest.remove_prefix(kEnDash.size());
    separated = true;
  } else if (lenient && (rest.starts_with('-') || rest.starts_with(':'))) {
    rest.remove_prefix(1);
    separated = true;
  }
  if (!separated) {
    throw ParseError("separator",
                     lenient ? "expected '–', '-' or ':' after timestamp"
                             : "expected '–' after timestamp",
                     line_no);
  }
  rest = Trim(rest);
  while (!rest.empty() && rest.back() == ',') rest = Trim(rest.substr(0, rest.size() - 1));
  if (rest.empty()) throw ParseError("caption", "empty caption", line_no);
  return {start, std::string(rest)};
}

}  // namespace

ParseOutcome ParseDenseText(std::string_view text, Timestamp total_duration,
                            ParseMode mode, std::string sequence_id) {
  if (total_duration.centiseconds() <= 0) {
    throw RangeError("total duration must be positive");
  }
  const bool lenient = mode == ParseMode::kLenient;
  ParseOutcome outcome;
  outcome.annotation.sequence_id = std::move(sequence_id);
  outcome.annotation.duration = total_duration;
  std::vector<Entry> entries;

  auto reject = [&](const ParseError& e, std::size_t line_no) {
    if (!lenient) throw e;
    outcome.warnings.push_back({line_no, "dropped entry: " + std::string(e.what())});
    ++outcome.dropped_lines;
  };

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (Trim(line).empty()) continue;

    const auto starts = EntryStarts(line, lenient);
    const std::string_view lead = Trim(line.substr(0, starts.empty() ? line.size() : starts[0]));
    if (!lead.empty()) {
      const bool preamble = entries.empty() && outcome.dropped_lines == 0;
      if (!lenient) {
        throw ParseError("entry", "text without a leading timestamp: \"" +
                                      std::string(lead) + "\"", line_no);
      }
      outcome.warnings.push_back(
          {line_no, std::string(preamble ? "skipped preamble" : "dropped line without timestamp") +
                        ": \"" + std::string(lead) + "\""});
      ++outcome.dropped_lines;
    }

    for (std::size_t k = 0; k < starts.size(); ++k) {
      std::size_t stop = k + 1 < starts.size() ? starts[k + 1] : line.size();
      std::string_view piece = line.substr(starts[k], stop - starts[k]);
      Entry entry;
      try {
        entry = ParseEntry(piece, lenient, line_no);
      } catch (const ParseError& e) {
        reject(e, line_no);
        continue;
      }
      if (!entries.empty() && !(entries.back().start < entry.start)) {
        reject(ParseError("start", "start " + FormatTimestamp(entry.start) +
                                       " does not increase", line_no),
               line_no);
        continue;
      }
      if (!(entry.start < total_duration)) {
        reject(ParseError("start", "start " + std::to_string(entry.start.centiseconds()) +
                                       " cs is not before the total duration",
                          line_no),
               line_no);
        continue;
      }
      entries.push_back(std::move(entry));
    }
    if (begin > text.size()) break;
  }

  if (entries.empty()) {
    if (!lenient) throw ParseError("entry", "no timestamped entries found");
    outcome.warnings.push_back({0, "no timestamped entries found"});
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Timestamp end = i + 1 < entries.size() ? entries[i + 1].start : total_duration;
    outcome.annotation.segments.push_back(
        {entries[i].start, end, std::move(entries[i].caption)});
  }
  return outcome;
}

std::string SerializeDenseText(const DenseAnnotation& annotation) {
  std::string out;
  for (std::size_t i = 0; i < annotation.segments.size(); ++i) {
    if (i > 0) out += ", ";
    out += FormatTimestamp(annotation.segments[i].start);
    out += " ";
    out += kEnDash;
    out += " ";
    out += annotation.segments[i].caption;
  }
  return out;
}

DenseAnnotation ShuffleSegmentCaptions(const DenseAnnotation& annotation,
                                       std::uint64_t seed) {
  const std::size_t m = annotation.segments.size();
  if (m < 2) {
    throw ValidationError("caption shuffling needs at least two segments, got " +
                          std::to_string(m));
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  // Rejection keeps the draw uniform over the m! - 1 non-identity permutations.
  bool identity = true;
  while (identity) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.Shuffle(std::span<std::size_t>(order));
    for (std::size_t i = 0; i < m && identity; ++i) identity = order[i] == i;
  }
  DenseAnnotation out = annotation;
  for (std::size_t i = 0; i < m; ++i) {
    out.segments[i].caption = annotation.segments[order[i]].caption;
  }
  return out;
}

}  // namespace dmc
