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

#include "ctta/dsl/prompt.hpp"
#include "text_util.hpp"

namespace ctta::dsl {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kNegativeStart: return "negative-start";
    case ViolationKind::kDegenerateSpan: return "degenerate-span";
    case ViolationKind::kEndExceedsClip: return "end-exceeds-clip";
    case ViolationKind::kEmptyDescription: return "empty-description";
    case ViolationKind::kMissingSpans: return "missing-spans";
    case ViolationKind::kOverlappingSpans: return "overlapping-spans";
  }
  return "unknown";
}

std::vector<Violation> validate(const StructuredPrompt& prompt,
                                Centiseconds clip_duration) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < prompt.events.size(); ++i) {
    const EventSpec& event = prompt.events[i];
    if (detail::trim(event.description).empty()) {
      out.push_back({ViolationKind::kEmptyDescription, i, std::nullopt,
                     "event description is empty"});
    }
    if (event.spans.empty()) {
      out.push_back({ViolationKind::kMissingSpans, i, std::nullopt,
                     "event has no time spans"});
    }
    for (std::size_t k = 0; k < event.spans.size(); ++k) {
      const TimeSpan& span = event.spans[k];
      const std::string shown =
          "<" + span.start.to_string() + "," + span.end.to_string() + ">";
      if (span.start.count() < 0) {
        out.push_back({ViolationKind::kNegativeStart, i, k,
                       "span " + shown + " starts before 0"});
      }
      if (!(span.start < span.end)) {
        out.push_back({ViolationKind::kDegenerateSpan, i, k,
                       "span " + shown + " does not start before it ends"});
      }
      if (span.end > clip_duration) {
        out.push_back({ViolationKind::kEndExceedsClip, i, k,
                       "span " + shown + " ends after the clip (" +
                           clip_duration.to_string() + ")"});
      }
    }
  }
  return out;
}

std::vector<Violation> overlap_warnings(const StructuredPrompt& prompt) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < prompt.events.size(); ++i) {
    std::vector<std::size_t> order(prompt.events[i].spans.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    const auto& spans = prompt.events[i].spans;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return spans[a] < spans[b]; });
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (spans[order[k - 1]].overlaps(spans[order[k]])) {
        out.push_back({ViolationKind::kOverlappingSpans, i, order[k],
                       "span overlaps an earlier span of the same event"});
      }
    }
  }
  return out;
}

}  // namespace ctta::dsl
