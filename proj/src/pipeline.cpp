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

#include "dmc/pipeline.hpp"

#include "dmc/annotation.hpp"
#include "dmc/error.hpp"
#include "dmc/file_util.hpp"
#include "dmc/motion.hpp"
#include "dmc/parallel.hpp"

namespace dmc {

ComposeSummary ComposeToDirectory(const ComposeJob& job) {
  job.config.Validate();
  const auto pool = LoadPool(job.pool_path, job.motion_dir, !job.plan_only);
  const FilterResult filtered = FilterPool(pool, job.config.min_alignment);
  const Dataset data = BuildDataset(filtered.kept, job.count, job.config, job.threads);

  std::error_code ec;
  std::filesystem::create_directories(job.out_dir / "motions", ec);
  if (ec) throw IoError("cannot create " + (job.out_dir / "motions").string() + ": " + ec.message());

  if (!job.plan_only) {
    ParallelFor(data.sequences.size(), job.threads, [&](std::size_t i) {
      const auto& seq = data.sequences[i];
      const MotionSequence m =
          ConcatMotions(seq.plan, filtered.kept, job.mode, job.config, seq.annotation.sequence_id);
      SaveMotion(m, job.out_dir / "motions" / (seq.annotation.sequence_id + ".dmc"));
    });
  }

  std::string lines;
  for (const auto& seq : data.sequences) lines += AnnotationToJsonLine(seq.annotation) + "\n";
  WriteFileAtomically(job.out_dir / "annotations.jsonl", lines);

  nlohmann::json manifest = data.manifest.ToJson();
  manifest["mode"] = job.mode == SeamMode::kBlend ? "blend" : "hard";
  manifest["motions_written"] = !job.plan_only;
  manifest["filter"] = {{"input_size", pool.size()},
                        {"kept_by_source", filtered.kept_by_source},
                        {"removed_by_source", filtered.removed_by_source},
                        {"unscored_ids", filtered.unscored_ids}};
  manifest["expected_mean_duration_s"] = ExpectedSequenceDuration(filtered.kept, job.config);
  WriteFileAtomically(job.out_dir / "manifest.json", manifest.dump(2) + "\n");

  ComposeSummary s;
  s.sequences = data.sequences.size();
  s.pool_size = pool.size();
  s.kept = filtered.kept.size();
  s.warnings = filtered.warnings;
  return s;
}

}  // namespace dmc
