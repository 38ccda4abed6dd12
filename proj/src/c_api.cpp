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

#include "dmc/c_api.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "dmc/annotation_json.hpp"
#include "dmc/caption_format.hpp"
#include "dmc/caption_metrics.hpp"
#include "dmc/error.hpp"
#include "dmc/file_util.hpp"
#include "dmc/pipeline.hpp"
#include "dmc/report.hpp"
#include "dmc/soda.hpp"
#include "dmc/text.hpp"

namespace {

using nlohmann::json;

char* CopyOut(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int Fail(char** error_json, const char* code, const std::string& message, int status) {
  if (error_json != nullptr) {
    *error_json =
        CopyOut(json{{"code", code}, {"message", message}, {"exit_code", status}}.dump());
  }
  return status;
}

json ParseJsonArg(const char* text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw dmc::ParseError(what, e.what());
  }
}

template <typename Fn>
int Guard(char** result, char** error_json, Fn&& fn) {
  if (result != nullptr) *result = nullptr;
  if (error_json != nullptr) *error_json = nullptr;
  if (result == nullptr) return Fail(error_json, "validation_error", "null result pointer", 2);
  try {
    *result = CopyOut(fn());
    return DMC_OK;
  } catch (const dmc::Error& e) {
    return Fail(error_json, dmc::ErrorCodeName(e.code()), e.what(), e.exit_code());
  } catch (const std::filesystem::filesystem_error& e) {
    return Fail(error_json, "io_error", e.what(), DMC_INPUT_ERROR);
  } catch (const std::exception& e) {
    return Fail(error_json, "internal_error", e.what(), DMC_INTERNAL_ERROR);
  } catch (...) {
    return Fail(error_json, "internal_error", "unknown exception", DMC_INTERNAL_ERROR);
  }
}

const char* OrEmpty(const char* s) { return s == nullptr ? "" : s; }

}  // namespace

extern "C" {

const char* dmc_version(void) { return DMC_VERSION; }

void dmc_free(char* p) { std::free(p); }

int dmc_evaluate(const char* preds_path, const char* refs_path, const char* config_json,
                 const char* scores_path, size_t threads, char** report_json,
                 char** error_json) {
  return Guard(report_json, error_json, [&] {
    dmc::EvalConfig config;
    if (config_json != nullptr && *config_json != '\0') {
      config = dmc::EvalConfig::FromJson(ParseJsonArg(config_json, "config"));
    }
    config.threads = threads == 0 ? 1 : threads;
    std::optional<std::filesystem::path> scores;
    if (scores_path != nullptr && *scores_path != '\0') scores = scores_path;
    return dmc::EvaluateFiles(OrEmpty(preds_path), OrEmpty(refs_path), config, scores)
               .ToJson()
               .dump(2) +
           "\n";
  });
}

int dmc_compose(const char* pool_path, const char* motion_dir, const char* out_dir, size_t count,
                uint64_t seed, const char* mode, const char* config_json, size_t threads,
                char** manifest_json, char** error_json) {
  return Guard(manifest_json, error_json, [&] {
    dmc::ComposeJob job;
    if (config_json != nullptr && *config_json != '\0') {
      job.config = dmc::CompositionConfig::FromJson(ParseJsonArg(config_json, "config"));
    }
    job.config.seed = seed;
    job.pool_path = OrEmpty(pool_path);
    job.motion_dir = OrEmpty(motion_dir);
    job.out_dir = OrEmpty(out_dir);
    if (job.out_dir.empty()) throw dmc::ValidationError("out_dir is required");
    job.count = count;
    job.mode = dmc::ParseSeamMode(mode == nullptr ? "blend" : mode);
    job.threads = threads == 0 ? 1 : threads;
    dmc::ComposeToDirectory(job);
    return dmc::ReadTextFile(job.out_dir / "manifest.json");
  });
}

int dmc_parse_dense_text(const char* text, int64_t duration_cs, const char* mode,
                         const char* sequence_id, char** result_json, char** error_json) {
  return Guard(result_json, error_json, [&] {
    const std::string m = mode == nullptr ? "strict" : mode;
    dmc::ParseMode pm;
    if (m == "strict") {
      pm = dmc::ParseMode::kStrict;
    } else if (m == "lenient") {
      pm = dmc::ParseMode::kLenient;
    } else {
      throw dmc::ValidationError("mode must be strict or lenient");
    }
    const auto r =
        dmc::ParseDenseText(OrEmpty(text), dmc::Timestamp(duration_cs), pm, OrEmpty(sequence_id));
    json warnings = json::array();
    for (const auto& w : r.warnings) warnings.push_back({{"line", w.line}, {"message", w.message}});
    return json{{"annotation", dmc::AnnotationToJson(r.annotation)}, {"warnings", warnings}}.dump();
  });
}

int dmc_soda_score(const char* refs_json, const char* preds_json, const char* metric,
                   int iou_weighted, char** result_json, char** error_json) {
  return Guard(result_json, error_json, [&] {
    const auto refs = dmc::AnnotationFromJson(ParseJsonArg(OrEmpty(refs_json), "refs"));
    const auto preds = dmc::AnnotationFromJson(ParseJsonArg(OrEmpty(preds_json), "preds"));
    const auto which = dmc::ParseCaptionMetric(metric == nullptr ? "meteor" : metric);
    std::vector<std::vector<dmc::TokenSequence>> docs;
    for (const auto& s : refs.segments) docs.push_back({dmc::Tokenize(s.caption)});
    const auto stats = dmc::BuildCorpusStats(docs);
    const auto scorer = dmc::MakePairScorer(which, &stats);
    const auto r = dmc::SodaScore(refs, preds, scorer, iou_weighted != 0);
    json path = json::array();
    for (const auto& [ref, pred] : r.path.pairs) path.push_back({ref, pred});
    return json{{"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}, {"path", path}}
        .dump();
  });
}

}  // extern "C"
