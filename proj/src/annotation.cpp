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

#include "dmc/annotation.hpp"

#include <sstream>

#include "dmc/annotation_json.hpp"
#include "dmc/error.hpp"
#include "dmc/file_util.hpp"

namespace dmc {

const char* ViolationRuleName(ViolationRule rule) {
  switch (rule) {
    case ViolationRule::kEmptyCaption: return "empty caption";
    case ViolationRule::kNonPositiveLength: return "start not before end";
    case ViolationRule::kEndExceedsDuration: return "end exceeds duration";
    case ViolationRule::kUnsorted: return "segments not sorted by start";
    case ViolationRule::kOverlap: return "overlaps previous segment";
  }
  return "unknown";
}

std::vector<Violation> ValidateAnnotation(const DenseAnnotation& annotation,
                                          bool strict_nonoverlap) {
  std::vector<Violation> out;
  auto add = [&](std::size_t i, ViolationRule rule, std::string detail) {
    out.push_back({i, rule,
                   "segment " + std::to_string(i) + ": " + ViolationRuleName(rule) +
                       (detail.empty() ? "" : " (" + detail + ")")});
  };
  const auto& segs = annotation.segments;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    if (s.caption.empty()) add(i, ViolationRule::kEmptyCaption, "");
    if (!(s.start < s.end)) {
      add(i, ViolationRule::kNonPositiveLength,
          std::to_string(s.start.centiseconds()) + " >= " +
              std::to_string(s.end.centiseconds()) + " cs");
    }
    if (s.end > annotation.duration) {
      add(i, ViolationRule::kEndExceedsDuration,
          std::to_string(s.end.centiseconds()) + " > " +
              std::to_string(annotation.duration.centiseconds()) + " cs");
    }
    if (i > 0) {
      if (s.start < segs[i - 1].start) {
        add(i, ViolationRule::kUnsorted, "");
      } else if (strict_nonoverlap && s.start < segs[i - 1].end) {
        add(i, ViolationRule::kOverlap,
            "starts at " + std::to_string(s.start.centiseconds()) +
                " cs, previous ends at " +
                std::to_string(segs[i - 1].end.centiseconds()) + " cs");
      }
    }
  }
  return out;
}

nlohmann::json AnnotationToJson(const DenseAnnotation& annotation) {
  nlohmann::json segments = nlohmann::json::array();
  for (const auto& s : annotation.segments) {
    segments.push_back({{"start_cs", s.start.centiseconds()},
                        {"end_cs", s.end.centiseconds()},
                        {"caption", s.caption}});
  }
  return {{"id", annotation.sequence_id},
          {"duration_cs", annotation.duration.centiseconds()},
          {"segments", std::move(segments)}};
}

namespace {

std::int64_t RequireCentiseconds(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ParseError(key, "missing or not an integer");
  }
  const auto v = j[key].get<std::int64_t>();
  if (v < 0) throw ParseError(key, "must be non-negative");
  return v;
}

}  // namespace

DenseAnnotation AnnotationFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("annotation", "expected a JSON object");
  if (!j.contains("id") || !j["id"].is_string()) {
    throw ParseError("id", "missing or not a string");
  }
  DenseAnnotation a;
  a.sequence_id = j["id"].get<std::string>();
  a.duration = Timestamp(RequireCentiseconds(j, "duration_cs"));
  if (!j.contains("segments") || !j["segments"].is_array()) {
    throw ParseError("segments", "missing or not an array");
  }
  for (const auto& s : j["segments"]) {
    if (!s.is_object()) throw ParseError("segments", "entry is not an object");
    if (!s.contains("caption") || !s["caption"].is_string()) {
      throw ParseError("caption", "missing or not a string");
    }
    a.segments.push_back({Timestamp(RequireCentiseconds(s, "start_cs")),
                          Timestamp(RequireCentiseconds(s, "end_cs")),
                          s["caption"].get<std::string>()});
  }
  return a;
}

std::vector<DenseAnnotation> ParseAnnotationLines(const std::string& text) {
  std::vector<DenseAnnotation> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("json", e.what(), line_no);
    }
    try {
      out.push_back(AnnotationFromJson(j));
    } catch (const ParseError& e) {
      throw ParseError(e.field(), e.detail(), line_no);
    } catch (const RangeError& e) {
      throw ParseError("timestamp", e.what(), line_no);
    }
  }
  return out;
}

std::string AnnotationToJsonLine(const DenseAnnotation& annotation) {
  return AnnotationToJson(annotation).dump();
}

std::vector<DenseAnnotation> ReadAnnotationFile(const std::filesystem::path& path) {
  return ParseAnnotationLines(ReadTextFile(path));
}

std::string DumpAnnotationLines(const std::vector<DenseAnnotation>& annotations) {
  std::string out;
  for (const auto& a : annotations) {
    out += AnnotationToJsonLine(a);
    out += '\n';
  }
  return out;
}

}  // namespace dmc
