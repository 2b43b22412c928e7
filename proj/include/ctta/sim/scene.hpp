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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctta/audio/waveform.hpp"
#include "ctta/common/rng.hpp"
#include "ctta/dsl/prompt.hpp"
#include "ctta/sim/pools.hpp"
#include "ctta/sim/priors.hpp"

namespace ctta::sim {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Half-open range of sample indices.
struct SampleRange {
  std::int64_t begin = 0;
  std::int64_t end = 0;
};

struct SimulationOptions {
  double clip_seconds = audio::kClipSeconds;
  /// Speech may fill at most this fraction of the clip.
  double speech_budget = 0.95;
  int max_arrangement_retries = 20;
  int min_dialogue_speakers = 2;
  int max_dialogue_speakers = 4;
  int max_utterances_per_speaker = 4;
  double peak_target = 0.95;
};

/// An item of `lengths` placed at `start` (both in samples).
struct Arrangement {
  std::size_t index;
  std::int64_t start;
};

/// Places segments back to back in a random order, splitting the leftover
/// silence into n + 1 gaps drawn from a flat Dirichlet. Results are in time
/// order, pairwise disjoint and inside [0, clip_length). Throws
/// SimulationError if the total exceeds budget * clip_length.
std::vector<Arrangement> arrange_timing(std::span<const std::int64_t> lengths,
                                        std::int64_t clip_length, Rng& rng,
                                        double budget = 0.95);

struct MixResult {
  std::vector<float> mixed;
  double gain = 1.0;           // applied to the background
  double normalization = 1.0;  // common-mode factor, 1 unless peak limiting fired
  bool normalized = false;
};

/// speech + g * background with g = rms(speech over `active`) /
/// (rms(background over `active`) * 10^(snr/20)), so the ratio holds while
/// speech is present. The sum is scaled to `peak_target` if it would exceed
/// full scale. An empty `active` means the whole clip.
MixResult mix_at_snr(std::span<const float> speech, std::span<const float> background,
                     double snr_db, std::span<const SampleRange> active = {},
                     double peak_target = 0.95);

struct Placement {
  std::size_t clip_index;  // into SpeechPool::clips()
  std::string speaker_id;
  std::int64_t start = 0;   // samples
  std::int64_t length = 0;  // samples

  double start_seconds() const { return static_cast<double>(start) / audio::kModelSampleRate; }
  double end_seconds() const {
    return static_cast<double>(start + length) / audio::kModelSampleRate;
  }
};

struct SceneSpec {
  Scenario scenario = Scenario::kMonologue;
  std::vector<Placement> placements;  // time order
  std::size_t background_index = 0;
  std::string background_id;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  double gain = 1.0;
  double normalization = 1.0;
};

struct ComposedScene {
  audio::Waveform mix;
  dsl::StructuredPrompt prompt;
  std::vector<dsl::EventAnnotation> events;
  SceneSpec spec;
};

/// "Man speaking", "Woman speaking" or "Speech" when gender is unknown.
std::string speech_label(const UtteranceClip& clip);

/// One simulated clip: scenario, speakers and utterances, arrangement,
/// background and SNR are all drawn from a stream seeded by `seed`.
ComposedScene compose_scene(const SpeechPool& speech, const BackgroundPool& backgrounds,
                            const ScenePriors& priors, std::uint64_t seed,
                            const SimulationOptions& options = {});

/// The speech-only track of a scene, rebuilt from its placements.
std::vector<float> render_speech(const SpeechPool& speech, const SceneSpec& spec,
                                 std::size_t clip_length);

}  // namespace ctta::sim
