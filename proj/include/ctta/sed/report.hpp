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

#include <string>

#include "ctta/sed/metrics.hpp"

namespace ctta::sed {

struct EvaluationReport {
  EventBasedResult eb;
  ClipLevelResult at;
  EbConfig config;
  /// Selects macro Eb as the headline instead of micro.
  bool macro_eb = false;

  double headline_eb() const { return macro_eb ? eb.macro_f1() : eb.micro_f1(); }
  double headline_at() const { return at.macro_f1(); }
};

EvaluationReport evaluate(std::span<const ClipAnnotations> truth,
                          std::span<const ClipAnnotations> pred, const EbConfig& config = {},
                          bool macro_eb = false);

/// A score in [0, 1] as a percentage with one decimal, e.g. "66.7".
std::string percent(double score);

/// Tab-separated report: a header, the headline rows, then per-class rows.
std::string format_report(const EvaluationReport& report);

/// "Eb=100.0 At=100.0"
std::string headline(const EvaluationReport& report);

}  // namespace ctta::sed
