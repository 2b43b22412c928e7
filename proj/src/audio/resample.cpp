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

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ctta/audio/waveform.hpp"

namespace ctta::audio {

namespace {

constexpr double kRolloff = 0.95;
constexpr double kZeroCrossings = 32.0;
constexpr double kKaiserBeta = 8.6;

double kaiser(double r) {
  if (std::fabs(r) >= 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) /
         std::cyl_bessel_i(0.0, kKaiserBeta);
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

std::vector<float> resample(std::span<const float> mono, int from_rate, int to_rate) {
  if (from_rate <= 0 || to_rate <= 0) throw AudioError("sample rates must be positive");
  if (from_rate == to_rate || mono.empty()) return {mono.begin(), mono.end()};

  const long g = std::gcd(from_rate, to_rate);
  const long up = to_rate / g;
  const long down = from_rate / g;
  const double cutoff = std::min(1.0, static_cast<double>(to_rate) / from_rate) * kRolloff;
  const double half_width = kZeroCrossings / cutoff;
  const long taps_per_side = static_cast<long>(std::ceil(half_width));
  const long taps = 2 * taps_per_side;

  // bank[phase][j] weights input sample (base + j - taps_per_side + 1).
  std::vector<double> bank(static_cast<std::size_t>(up * taps));
  for (long phase = 0; phase < up; ++phase) {
    const double frac = static_cast<double>(phase) / up;
    for (long j = 0; j < taps; ++j) {
      const double x = frac - static_cast<double>(j - taps_per_side + 1);
      bank[static_cast<std::size_t>(phase * taps + j)] =
          cutoff * sinc(cutoff * x) * kaiser(x / half_width);
    }
  }

  const long n_in = static_cast<long>(mono.size());
  const long n_out = (n_in * up + down - 1) / down;
  std::vector<float> out(static_cast<std::size_t>(n_out));
  for (long n = 0; n < n_out; ++n) {
    const long pos = n * down;
    const long base = pos / up;
    const long phase = pos % up;
    const double* h = &bank[static_cast<std::size_t>(phase * taps)];
    double acc = 0.0;
    const long first = base - taps_per_side + 1;
    for (long j = 0; j < taps; ++j) {
      const long k = first + j;
      if (k < 0 || k >= n_in) continue;
      acc += h[j] * mono[static_cast<std::size_t>(k)];
    }
    out[static_cast<std::size_t>(n)] = static_cast<float>(acc);
  }
  return out;
}

}  // namespace ctta::audio
