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
#include <cstdlib>

#include "ctta/dsl/prompt.hpp"
#include "text_util.hpp"

namespace ctta::dsl {

std::string Centiseconds::to_string() const {
  const std::int64_t magnitude = std::llabs(count_);
  std::string frac = std::to_string(magnitude % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return (count_ < 0 ? "-" : "") + std::to_string(magnitude / 100) + "." + frac;
}

namespace {

void check_description(std::string_view description, std::size_t index) {
  const auto where = " in event " + std::to_string(index);
  if (description.empty()) throw InvariantError("empty description" + where);
  if (description.find(detail::kBlockOpen) != std::string_view::npos ||
      description.find_first_of("}&\"") != std::string_view::npos) {
    throw InvariantError("reserved character in description" + where);
  }
}

void append_speech(std::string& out, std::string_view speech) {
  out.push_back('"');
  for (const char c : speech) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

SerializedPrompt serialize_with_layout(const StructuredPrompt& prompt) {
  SerializedPrompt result;
  std::string& out = result.text;

  const std::string_view caption = detail::trim(prompt.caption);
  if (caption.find(detail::kBlockOpen) != std::string_view::npos) {
    throw InvariantError("caption contains '@{'");
  }
  out.append(caption);

  for (std::size_t i = 0; i < prompt.events.size(); ++i) {
    const EventSpec& event = prompt.events[i];
    const std::string_view description = detail::trim(event.description);
    check_description(description, i);
    if (event.spans.empty()) {
      throw InvariantError("event " + std::to_string(i) + " has no spans");
    }
    std::vector<TimeSpan> spans = event.spans;
    std::stable_sort(spans.begin(), spans.end());
    for (const TimeSpan& span : spans) {
      if (span.start.count() < 0 || !(span.start < span.end)) {
        throw InvariantError("invalid span <" + span.start.to_string() + "," +
                             span.end.to_string() + "> in event " +
                             std::to_string(i));
      }
    }

    if (!out.empty()) out.push_back(' ');
    out.append("@{");
    out.append(description);
    out.append(" &");
    for (const TimeSpan& span : spans) {
      out.append(" <");
      out.append(span.start.to_string());
      out.push_back(',');
      out.append(span.end.to_string());
      out.push_back('>');
    }
    if (event.speech) {
      out.push_back(' ');
      const std::size_t begin = out.size();
      append_speech(out, *event.speech);
      result.speech_ranges.push_back({begin, out.size()});
    }
    out.push_back('}');
  }
  return result;
}

std::string serialize(const StructuredPrompt& prompt) {
  return serialize_with_layout(prompt).text;
}

}  // namespace ctta::dsl
