// Copyright 2026 The ctta Authors.
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

#include <filesystem>

#include "ctta/sed/report.hpp"

namespace ctta::pipeline {

/// Scores `pred` against `truth` (JSONL manifests or TSV annotations) and
/// writes the report atomically when `report_path` is non-empty. Input
/// problems surface as sed::AnnotationFormatError or sed::EvaluationError.
sed::EvaluationReport cmd_evaluate(const std::filesystem::path& truth,
                                   const std::filesystem::path& pred,
                                   const sed::EbConfig& config = {}, bool macro_eb = false,
                                   const std::filesystem::path& report_path = {});

}  // namespace ctta::pipeline
