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

#include <stdexcept>

#include "ctta/diffusion/condition.hpp"

namespace ctta::diffusion {

Condition Condition::at_level(ConditionLevel level, int text, int timing, int phoneme) {
  switch (level) {
    case ConditionLevel::kNull: return null();
    case ConditionLevel::kText: return text_only(text);
    case ConditionLevel::kTextTiming: return text_timing(text, timing);
    case ConditionLevel::kFull: return full(text, timing, phoneme);
  }
  throw std::invalid_argument("invalid condition level");
}

std::string Condition::to_string() const {
  switch (level) {
    case ConditionLevel::kNull: return "null";
    case ConditionLevel::kText: return "text(" + std::to_string(text) + ")";
    case ConditionLevel::kTextTiming:
      return "text_timing(" + std::to_string(text) + "," + std::to_string(timing) + ")";
    case ConditionLevel::kFull:
      return "full(" + std::to_string(text) + "," + std::to_string(timing) + "," +
             std::to_string(phoneme) + ")";
  }
  return "invalid";
}

std::string_view to_string(ConditionLevel level) {
  switch (level) {
    case ConditionLevel::kNull: return "null";
    case ConditionLevel::kText: return "text";
    case ConditionLevel::kTextTiming: return "text_timing";
    case ConditionLevel::kFull: return "full";
  }
  return "invalid";
}

ConditionLevel parse_condition_level(std::string_view name) {
  if (name == "null") return ConditionLevel::kNull;
  if (name == "text") return ConditionLevel::kText;
  if (name == "text_timing") return ConditionLevel::kTextTiming;
  if (name == "full") return ConditionLevel::kFull;
  throw std::invalid_argument("unknown condition level '" + std::string(name) + "'");
}

}  // namespace ctta::diffusion
