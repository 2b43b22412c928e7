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

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace ctta::dsl {

/// Time quantized to hundredths of a second, the resolution of the prompt
/// format.
class Centiseconds {
 public:
  constexpr Centiseconds() = default;
  constexpr explicit Centiseconds(std::int64_t count) : count_(count) {}

  static Centiseconds from_seconds(double seconds) {
    return Centiseconds(std::llround(seconds * 100.0));
  }

  constexpr std::int64_t count() const { return count_; }
  constexpr double seconds() const { return static_cast<double>(count_) / 100.0; }

  /// Fixed two-digit rendering, e.g. "1.50". Negative values keep their sign.
  std::string to_string() const;

  constexpr auto operator<=>(const Centiseconds&) const = default;

 private:
  std::int64_t count_ = 0;
};

constexpr Centiseconds operator+(Centiseconds a, Centiseconds b) {
  return Centiseconds(a.count() + b.count());
}
constexpr Centiseconds operator-(Centiseconds a, Centiseconds b) {
  return Centiseconds(a.count() - b.count());
}

inline constexpr Centiseconds kDefaultClipDuration{1000};

struct TimeSpan {
  Centiseconds start;
  Centiseconds end;

  static TimeSpan from_seconds(double start, double end) {
    return {Centiseconds::from_seconds(start), Centiseconds::from_seconds(end)};
  }

  constexpr Centiseconds length() const { return end - start; }
  constexpr bool overlaps(const TimeSpan& other) const {
    return start < other.end && other.start < end;
  }

  constexpr auto operator<=>(const TimeSpan&) const = default;
};

}  // namespace ctta::dsl
