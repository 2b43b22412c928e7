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

#include <compare>
#include <string>
#include <string_view>

namespace ctta::diffusion {

/// How much of the structured prompt a condition carries.
enum class ConditionLevel : int {
  kNull = 0,        // unconditional branch
  kText = 1,        // caption only
  kTextTiming = 2,  // caption and event spans (no phonemes)
  kFull = 3,        // caption, spans and phonemes
};

inline constexpr int kConditionLevels = 4;

/// A desk-scale condition: integer ids into learned tables, one per field
/// revealed at the condition's level. Unused fields are always zero.
struct Condition {
  ConditionLevel level = ConditionLevel::kNull;
  int text = 0;
  int timing = 0;
  int phoneme = 0;

  static Condition null() { return {}; }
  static Condition text_only(int text) { return {ConditionLevel::kText, text, 0, 0}; }
  static Condition text_timing(int text, int timing) {
    return {ConditionLevel::kTextTiming, text, timing, 0};
  }
  static Condition full(int text, int timing, int phoneme) {
    return {ConditionLevel::kFull, text, timing, phoneme};
  }
  /// Keeps the fields visible at `level` and zeroes the rest.
  static Condition at_level(ConditionLevel level, int text, int timing, int phoneme);

  bool is_null() const { return level == ConditionLevel::kNull; }
  std::string to_string() const;

  auto operator<=>(const Condition&) const = default;
};

std::string_view to_string(ConditionLevel level);
ConditionLevel parse_condition_level(std::string_view name);

}  // namespace ctta::diffusion
