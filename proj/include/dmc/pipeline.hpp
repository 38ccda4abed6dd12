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

#include <json.hpp>

#include "dmc/blend.hpp"
#include "dmc/compose.hpp"

namespace dmc {

struct ComposeJob {
  std::filesystem::path pool_path;
  std::filesystem::path motion_dir;
  std::filesystem::path out_dir;
  std::size_t count = 0;
  CompositionConfig config;
  SeamMode mode = SeamMode::kBlend;
  /// Skip loading source motions and writing composed ones.
  bool plan_only = false;
  std::size_t threads = 1;
};

struct ComposeSummary {
  std::size_t sequences = 0;
  std::size_t pool_size = 0;
  std::size_t kept = 0;
  std::vector<std::string> warnings;
};

/// Loads and filters the pool, composes `count` sequences and writes
/// out_dir/annotations.jsonl, out_dir/manifest.json and, unless plan_only,
/// out_dir/motions/<id>.dmc. Every file is written atomically.
ComposeSummary ComposeToDirectory(const ComposeJob& job);

}  // namespace dmc
