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

#ifndef DMC_C_API_H_
#define DMC_C_API_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; the non-zero values match the CLI exit codes. */
#define DMC_OK 0
#define DMC_INPUT_ERROR 2
#define DMC_INTERNAL_ERROR 3

/* Every function returning char* via an out parameter allocates it; release
 * with dmc_free. On failure *error_json receives
 * {"code": str, "message": str, "exit_code": int} and *result is NULL. */

const char* dmc_version(void);
void dmc_free(char* p);

/* config_json and scores_path may be NULL. The report text is byte-identical
 * to `dmc eval --out`. */
int dmc_evaluate(const char* preds_path, const char* refs_path, const char* config_json,
                 const char* scores_path, size_t threads, char** report_json,
                 char** error_json);

/* mode is "hard" or "blend"; config_json may be NULL and uses the keys of the
 * manifest's "config" block. Returns the written manifest text. */
int dmc_compose(const char* pool_path, const char* motion_dir, const char* out_dir, size_t count,
                uint64_t seed, const char* mode, const char* config_json, size_t threads,
                char** manifest_json, char** error_json);

/* mode is "strict" or "lenient". Result: {"annotation": {...}, "warnings": [...]}. */
int dmc_parse_dense_text(const char* text, int64_t duration_cs, const char* mode,
                         const char* sequence_id, char** result_json, char** error_json);

/* refs_json and preds_json are annotation objects. metric is a caption metric
 * name. Result: {"precision", "recall", "f1", "path": [[ref, pred], ...]}. */
int dmc_soda_score(const char* refs_json, const char* preds_json, const char* metric,
                   int iou_weighted, char** result_json, char** error_json);

#ifdef __cplusplus
}
#endif

#endif  // DMC_C_API_H_
