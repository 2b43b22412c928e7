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

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ctta/dsl/annotation.hpp"
#include "ctta/dsl/time.hpp"

namespace ctta::dsl {

/// One `@{description & <s,e> ... "speech"}` block.
struct EventSpec {
  std::string description;
  std::vector<TimeSpan> spans;
  std::optional<std::string> speech;

  bool operator==(const EventSpec&) const = default;
};

/// Caption followed by zero or more timed events.
///
/// Text form:
///
///   prompt        := caption event_block*
///   event_block   := "@{" description "&" span+ [ quoted_speech ] "}"
///   span          := "<" decimal "," decimal ">"
///   quoted_speech := '"' text with \" and \\ escapes '"'
///
/// The caption is everything before the first "@{". Whitespace between
/// tokens is free. Decimals take at most two fraction digits.
struct StructuredPrompt {
  std::string caption;
  std::vector<EventSpec> events;

  bool operator==(const StructuredPrompt&) const = default;
};

enum class ParseErrorKind { kSyntax, kDegenerateSpan, kForbiddenCharacter };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t offset, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  /// Byte offset into the parsed text.
  std::size_t offset() const { return offset_; }

 private:
  ParseErrorKind kind_;
  std::size_t offset_;
};

/// Thrown by serialize() for values that have no canonical text form.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

StructuredPrompt parse(std::string_view text);

/// Canonical text: single spaces between blocks, two-digit spans sorted by
/// start, trimmed caption and descriptions, speech last inside its block.
std::string serialize(const StructuredPrompt& prompt);

struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const ByteRange&) const = default;
};

/// Canonical text plus, for each event with speech, the byte range of its
/// quoted segment (quotes included), in text order.
struct SerializedPrompt {
  std::string text;
  std::vector<ByteRange> speech_ranges;
};

SerializedPrompt serialize_with_layout(const StructuredPrompt& prompt);

/// Parse then serialize.
std::string canonicalize(std::string_view text);

enum class ViolationKind {
  kNegativeStart,
  kDegenerateSpan,
  kEndExceedsClip,
  kEmptyDescription,
  kMissingSpans,
  kOverlappingSpans,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::size_t event_index = 0;
  std::optional<std::size_t> span_index;
  std::string message;
};

/// Every rule the prompt breaks against a clip of the given length. An empty
/// result means each span satisfies 0 <= start < end <= clip_duration and
/// each description is non-empty.
std::vector<Violation> validate(const StructuredPrompt& prompt,
                                Centiseconds clip_duration = kDefaultClipDuration);

/// Spans of the same event that overlap each other. Legal, but usually a
/// planning mistake.
std::vector<Violation> overlap_warnings(const StructuredPrompt& prompt);

/// Builds a prompt from annotated events. Annotations sharing a label become
/// one multi-span event when they also share one transcript (or all have
/// none); otherwise each stays a separate event. Empty transcripts count as
/// no speech. Throws std::invalid_argument for spans outside the clip.
StructuredPrompt from_annotations(std::string caption,
                                  std::span<const EventAnnotation> annotations,
                                  Centiseconds clip_duration = kDefaultClipDuration);

/// The same prompt with all speech removed.
StructuredPrompt strip_speech(const StructuredPrompt& prompt);

/// Event descriptions and spans flattened back into annotations, one per span.
std::vector<EventAnnotation> to_annotations(const StructuredPrompt& prompt);

}  // namespace ctta::dsl
