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
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "ctta/common/rng.hpp"

namespace ctta::audio {

inline constexpr int kModelSampleRate = 16000;
inline constexpr double kClipSeconds = 10.0;

/// Interleaved float samples in [-1, 1].
struct Waveform {
  int sample_rate = kModelSampleRate;
  int channels = 1;
  std::vector<float> samples;

  std::size_t frames() const {
    return channels > 0 ? samples.size() / static_cast<std::size_t>(channels) : 0;
  }
  double duration() const { return static_cast<double>(frames()) / sample_rate; }
};

class AudioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// RIFF/WAVE decoding: integer PCM (8/16/24/32-bit) and 32-bit float,
/// including WAVE_FORMAT_EXTENSIBLE.
Waveform decode_wav(std::span<const std::uint8_t> bytes);
Waveform read_wav(const std::filesystem::path& path);

/// 16-bit PCM encoding with round-to-nearest and clamping.
std::vector<std::uint8_t> encode_wav_pcm16(const Waveform& wave);
void write_wav(const std::filesystem::path& path, const Waveform& wave);

double rms(std::span<const float> samples);
double peak(std::span<const float> samples);

/// Average of all channels.
Waveform downmix(const Waveform& wave);

/// Windowed-sinc (Kaiser) polyphase resampling of a mono signal.
std::vector<float> resample(std::span<const float> mono, int from_rate, int to_rate);

enum class CropMode {
  kRandom,  // random 10 s window; pretraining data
  kHead,    // first 10 s; keeps timestamps aligned
};

/// Mono at the model rate, without changing the length.
Waveform to_model_format(const Waveform& wave);

/// Mono at the model rate, right-padded with zeros or cropped to exactly
/// `clip_seconds`. `rng` is required for CropMode::kRandom.
Waveform preprocess_clip(const Waveform& wave, CropMode mode, Rng* rng = nullptr,
                         double clip_seconds = kClipSeconds);

}  // namespace ctta::audio
