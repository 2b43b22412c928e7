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

#include "ctta/audio/waveform.hpp"

namespace ctta::audio {

Waveform downmix(const Waveform& wave) {
  if (wave.channels <= 0) throw AudioError("invalid channel count");
  if (wave.channels == 1) return wave;
  Waveform out{wave.sample_rate, 1, std::vector<float>(wave.frames())};
  const auto channels = static_cast<std::size_t>(wave.channels);
  for (std::size_t f = 0; f < out.samples.size(); ++f) {
    double sum = 0.0;
    for (std::size_t c = 0; c < channels; ++c) sum += wave.samples[f * channels + c];
    out.samples[f] = static_cast<float>(sum / static_cast<double>(channels));
  }
  return out;
}

Waveform to_model_format(const Waveform& wave) {
  if (wave.samples.empty()) throw AudioError("empty audio");
  Waveform mono = downmix(wave);
  if (mono.sample_rate != kModelSampleRate) {
    mono.samples = resample(mono.samples, mono.sample_rate, kModelSampleRate);
    mono.sample_rate = kModelSampleRate;
  }
  return mono;
}

Waveform preprocess_clip(const Waveform& wave, CropMode mode, Rng* rng,
                         double clip_seconds) {
  Waveform mono = to_model_format(wave);
  const auto target = static_cast<std::size_t>(std::llround(clip_seconds * kModelSampleRate));
  if (mono.samples.size() > target) {
    std::size_t offset = 0;
    if (mode == CropMode::kRandom) {
      if (!rng) throw std::invalid_argument("random crop needs an Rng");
      offset = static_cast<std::size_t>(rng->below(mono.samples.size() - target + 1));
    }
    mono.samples.erase(mono.samples.begin(),
                       mono.samples.begin() + static_cast<std::ptrdiff_t>(offset));
  }
  mono.samples.resize(target, 0.0f);
  return mono;
}

}  // namespace ctta::audio
