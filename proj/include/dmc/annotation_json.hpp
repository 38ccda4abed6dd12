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

#include <json.hpp>

#include "dmc/annotation.hpp"

namespace dmc {

nlohmann::json AnnotationToJson(const DenseAnnotation& annotation);

/// Throws ParseError on missing or mistyped fields.
DenseAnnotation AnnotationFromJson(const nlohmann::json& j);

}  // namespace dmc
