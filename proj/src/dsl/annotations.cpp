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

#include <algorithm>
#include <map>

#include "ctta/dsl/prompt.hpp"

namespace ctta::dsl {

StructuredPrompt from_annotations(std::string caption,
                                  std::span<const EventAnnotation> annotations,
                                  Centiseconds clip_duration) {
  for (const EventAnnotation& a : annotations) {
    if (a.span.start.count() < 0 || !(a.span.start < a.span.end) ||
        a.span.end > clip_duration) {
      throw std::invalid_argument("annotation '" + a.label + "' has invalid span <" +
                                  a.span.start.to_string() + "," +
                                  a.span.end.to_string() + ">");
    }
  }
  const auto speech_of = [](const EventAnnotation& a) -> std::optional<std::string> {
    if (a.transcript && !a.transcript->empty()) return a.transcript;
    return std::nullopt;
  };

  // Group by label in order of first appearance.
  std::vector<std::string> labels;
  std::map<std::string, std::vector<const EventAnnotation*>> groups;
  for (const EventAnnotation& a : annotations) {
    auto [it, inserted] = groups.try_emplace(a.label);
    if (inserted) labels.push_back(a.label);
    it->second.push_back(&a);
  }

  StructuredPrompt prompt{std::move(caption), {}};
  for (const std::string& label : labels) {
    const auto& members = groups[label];
    const auto speech = speech_of(*members.front());
    const bool shared = std::all_of(members.begin(), members.end(), [&](auto* m) {
      return speech_of(*m) == speech;
    });
    if (shared) {
      EventSpec event{label, {}, speech};
      for (const auto* m : members) event.spans.push_back(m->span);
      std::stable_sort(event.spans.begin(), event.spans.end());
      prompt.events.push_back(std::move(event));
    } else {
      for (const auto* m : members) {
        prompt.events.push_back({label, {m->span}, speech_of(*m)});
      }
    }
  }
  return prompt;
}

StructuredPrompt strip_speech(const StructuredPrompt& prompt) {
  StructuredPrompt out = prompt;
  for (EventSpec& event : out.events) event.speech.reset();
  return out;
}

std::vector<EventAnnotation> to_annotations(const StructuredPrompt& prompt) {
  std::vector<EventAnnotation> out;
  for (const EventSpec& event : prompt.events) {
    for (const TimeSpan& span : event.spans) {
      out.push_back({event.description, span, event.speech});
    }
  }
  return out;
}

}  // namespace ctta::dsl
