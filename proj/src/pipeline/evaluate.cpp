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

#include "ctta/pipeline/atomic_file.hpp"
#include "ctta/pipeline/evaluate.hpp"
#include "ctta/sed/annotations_io.hpp"

namespace ctta::pipeline {

sed::EvaluationReport cmd_evaluate(const std::filesystem::path& truth,
                                   const std::filesystem::path& pred, const sed::EbConfig& config,
                                   bool macro_eb, const std::filesystem::path& report_path) {
  config.validate();
  const auto t = sed::annotations_from_manifest(truth);
  const auto p = sed::annotations_from_manifest(pred);
  auto report = sed::evaluate(t, p, config, macro_eb);
  if (!report_path.empty()) write_file_atomic(report_path, sed::format_report(report));
  return report;
}

}  // namespace ctta::pipeline
