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

#include <string>

#include "ctta/dsl/prompt.hpp"
#include "text_util.hpp"

namespace ctta::dsl {

namespace {

using detail::is_space;

constexpr int kMaxIntegerDigits = 9;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  StructuredPrompt run() {
    StructuredPrompt prompt;
    const std::size_t first = text_.find(detail::kBlockOpen);
    const std::size_t caption_end =
        first == std::string_view::npos ? text_.size() : first;
    prompt.caption = std::string(detail::trim(text_.substr(0, caption_end)));
    pos_ = caption_end;
    for (;;) {
      skip_space();
      if (at_end()) break;
      prompt.events.push_back(event_block());
    }
    return prompt;
  }

 private:
  EventSpec event_block() {
    expect(detail::kBlockOpen, "expected '@{'");
    EventSpec event;
    event.description = description();
    expect("&", "expected '&'");
    skip_space();
    if (at_end() || peek() != '<') fail(ParseErrorKind::kSyntax, "expected '<'");
    while (!at_end() && peek() == '<') {
      event.spans.push_back(span());
      skip_space();
    }
    if (!at_end() && peek() == '"') {
      event.speech = quoted_speech();
      skip_space();
    }
    expect("}", event.speech ? "expected '}'" : "expected '<', '\"' or '}'");
    return event;
  }

  std::string description() {
    const std::size_t begin = pos_;
    while (!at_end() && peek() != '&') {
      const char c = peek();
      if (c == '"') {
        fail(ParseErrorKind::kForbiddenCharacter,
             "'\"' is not allowed in an event description");
      }
      if (c == '}') fail(ParseErrorKind::kSyntax, "expected '&'");
      if (text_.substr(pos_).starts_with(detail::kBlockOpen)) {
        fail(ParseErrorKind::kForbiddenCharacter,
             "'@{' is not allowed in an event description");
      }
      ++pos_;
    }
    if (at_end()) fail(ParseErrorKind::kSyntax, "expected '&'");
    const std::string_view raw = detail::trim(text_.substr(begin, pos_ - begin));
    if (raw.empty()) {
      fail(ParseErrorKind::kSyntax, "expected event description", begin);
    }
    return std::string(raw);
  }

  TimeSpan span() {
    const std::size_t begin = pos_;
    expect("<", "expected '<'");
    skip_space();
    const Centiseconds start = decimal();
    skip_space();
    expect(",", "expected ','");
    skip_space();
    const Centiseconds end = decimal();
    skip_space();
    expect(">", "expected '>'");
    if (!(start < end)) {
      fail(ParseErrorKind::kDegenerateSpan,
           "span start " + start.to_string() + " is not before end " +
               end.to_string(),
           begin);
    }
    return {start, end};
  }

  Centiseconds decimal() {
    const std::size_t begin = pos_;
    std::int64_t whole = 0;
    int digits = 0;
    while (!at_end() && is_digit(peek())) {
      if (++digits > kMaxIntegerDigits) {
        fail(ParseErrorKind::kSyntax, "number too large", begin);
      }
      whole = whole * 10 + (peek() - '0');
      ++pos_;
    }
    if (digits == 0) fail(ParseErrorKind::kSyntax, "expected decimal number");
    std::int64_t frac = 0;
    if (!at_end() && peek() == '.') {
      ++pos_;
      int frac_digits = 0;
      while (!at_end() && is_digit(peek())) {
        if (++frac_digits > 2) {
          fail(ParseErrorKind::kSyntax, "at most two fraction digits allowed");
        }
        frac = frac * 10 + (peek() - '0');
        ++pos_;
      }
      if (frac_digits == 1) frac *= 10;
    }
    return Centiseconds(whole * 100 + frac);
  }

  std::string quoted_speech() {
    ++pos_;  // opening quote
    std::string out;
    for (;;) {
      if (at_end()) fail(ParseErrorKind::kSyntax, "unterminated speech quote");
      const char c = peek();
      if (c == '"') {
        ++pos_;
        return out;
      }
      if (c == '\\') {
        ++pos_;
        if (at_end() || (peek() != '"' && peek() != '\\')) {
          fail(ParseErrorKind::kSyntax, "invalid escape; expected \\\" or \\\\");
        }
      }
      out.push_back(peek());
      ++pos_;
    }
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  void expect(std::string_view token, const char* message) {
    if (!text_.substr(pos_).starts_with(token)) {
      fail(ParseErrorKind::kSyntax, message);
    }
    pos_ += token.size();
  }

  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(ParseErrorKind kind, const std::string& message) const {
    fail(kind, message, pos_);
  }
  [[noreturn]] void fail(ParseErrorKind kind, const std::string& message,
                         std::size_t at) const {
    throw ParseError(kind, at, message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t offset,
                       const std::string& message)
    : std::runtime_error("offset " + std::to_string(offset) + ": " + message),
      kind_(kind),
      offset_(offset) {}

StructuredPrompt parse(std::string_view text) { return Parser(text).run(); }

std::string canonicalize(std::string_view text) { return serialize(parse(text)); }

}  // namespace ctta::dsl
