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

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctta/dsl/annotation.hpp"

namespace ctta::sed {

using dsl::EventAnnotation;

struct ClipAnnotations {
  std::string clip_id;
  std::vector<EventAnnotation> events;
};

/// Collar tolerances in seconds. A prediction matches a truth event of the
/// same class when |onset difference| <= onset_collar and |offset
/// difference| <= max(offset_collar_abs, offset_collar_rel * truth length).
struct EbConfig {
  double onset_collar = 0.2;
  double offset_collar_abs = 0.2;
  double offset_collar_rel = 0.2;

  void validate() const;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Counts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  /// Zero when the denominator is zero.
  double precision() const;
  double recall() const;
  /// 2PR / (P + R), zero when P + R = 0.
  double f1() const;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const Counts&) const = default;
};

struct EventBasedResult {
  Counts overall;
  std::map<std::string, Counts> per_class;
  /// Classes with at least one truth event; the macro average runs over these.
  std::vector<std::string> truth_classes;

  double micro_f1() const { return overall.f1(); }
  double macro_f1() const;
};

struct ClipLevelResult {
  std::map<std::string, Counts> per_class;
  std::vector<std::string> truth_classes;

  double macro_f1() const;
};

/// Event-based scores under maximum-cardinality collar matching per clip and
/// class. A clip missing from `pred` counts as an empty prediction; a
/// predicted clip missing from `truth` contributes only false positives.
/// Throws EvaluationError on a duplicated clip_id within one side.
EventBasedResult event_based_f1(std::span<const ClipAnnotations> truth,
                                std::span<const ClipAnnotations> pred,
                                const EbConfig& config = {});

/// Per-class presence over clips, macro-averaged over truth-present classes.
ClipLevelResult clip_level_macro_f1(std::span<const ClipAnnotations> truth,
                                    std::span<const ClipAnnotations> pred);

}  // namespace ctta::sed
