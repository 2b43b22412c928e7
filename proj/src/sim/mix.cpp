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

#include "ctta/sim/scene.hpp"

namespace ctta::sim {

namespace {

double rms_over(std::span<const float> x, std::span<const SampleRange> ranges) {
  if (ranges.empty()) return audio::rms(x);
  double sum = 0.0;
  std::int64_t count = 0;
  const auto n = static_cast<std::int64_t>(x.size());
  for (const SampleRange& r : ranges) {
    for (std::int64_t i = std::max<std::int64_t>(r.begin, 0); i < std::min(r.end, n); ++i) {
      sum += static_cast<double>(x[static_cast<std::size_t>(i)]) * x[static_cast<std::size_t>(i)];
      ++count;
    }
  }
  return count > 0 ? std::sqrt(sum / static_cast<double>(count)) : 0.0;
}

}  // namespace

MixResult mix_at_snr(std::span<const float> speech, std::span<const float> background,
                     double snr_db, std::span<const SampleRange> active,
                     double peak_target) {
  if (speech.size() != background.size()) {
    throw SimulationError("speech and background lengths differ");
  }
  const double speech_rms = rms_over(speech, active);
  const double background_rms = rms_over(background, active);
  if (!(background_rms > 0.0)) throw SimulationError("background is silent under the speech");
  if (!(speech_rms > 0.0)) throw SimulationError("speech is silent");

  MixResult result;
  result.gain = speech_rms / (background_rms * std::pow(10.0, snr_db / 20.0));
  std::vector<double> sum(speech.size());
  double max_abs = 0.0;
  for (std::size_t i = 0; i < speech.size(); ++i) {
    sum[i] = static_cast<double>(speech[i]) + result.gain * background[i];
    max_abs = std::max(max_abs, std::fabs(sum[i]));
  }
  if (max_abs > 1.0) {
    result.normalization = peak_target / max_abs;
    result.normalized = true;
  }
  result.mixed.resize(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) {
    result.mixed[i] = static_cast<float>(sum[i] * result.normalization);
  }
  return result;
}

}  // namespace ctta::sim
