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

#include <optional>
#include <string>

#include "ctta/dsl/time.hpp"

namespace ctta::dsl {

/// A labelled, timed event, optionally carrying the words spoken in it.
struct EventAnnotation {
  std::string label;
  TimeSpan span;
  std::optional<std::string> transcript;

  bool operator==(const EventAnnotation&) const = default;
};

}  // namespace ctta::dsl
