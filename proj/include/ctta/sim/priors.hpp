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

#include <array>
#include <cstdint>
#include <string_view>

#include "ctta/common/rng.hpp"

namespace ctta::sim {

inline constexpr int kMaxUtterances = 8;

/// Clip counts per utterance number n = 1..8 for single-speaker clips.
inline constexpr std::array<std::uint32_t, kMaxUtterances> kUtteranceCountTable = {
    12723, 6462, 6284, 5720, 4201, 2328, 1047, 456};

/// The table above normalized over n <= 8.
std::array<double, kMaxUtterances> default_utterance_pmf();

enum class Scenario { kMonologue, kDialogue };

std::string_view to_string(Scenario scenario);
Scenario parse_scenario(std::string_view name);

struct ScenePriors {
  double p_single_speaker = 0.791;
  /// Probability of n utterances at index n - 1.
  std::array<double, kMaxUtterances> utterance_count_pmf = default_utterance_pmf();
  double snr_low_db = 2.0;
  double snr_high_db = 10.0;

  /// Throws std::invalid_argument unless the pmf sums to 1 within 1e-9, all
  /// probabilities are in [0, 1] and the SNR range is ordered.
  void validate() const;
};

Scenario sample_scenario(const ScenePriors& priors, Rng& rng);

/// A draw in 1..8.
int sample_utterance_count(const ScenePriors& priors, Rng& rng);

}  // namespace ctta::sim
