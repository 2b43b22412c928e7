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

#include "ctta/sim/priors.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ctta::sim {

std::array<double, kMaxUtterances> default_utterance_pmf() {
  const double total = std::accumulate(kUtteranceCountTable.begin(),
                                       kUtteranceCountTable.end(), 0.0);
  std::array<double, kMaxUtterances> pmf{};
  for (std::size_t i = 0; i < pmf.size(); ++i) pmf[i] = kUtteranceCountTable[i] / total;
  return pmf;
}

std::string_view to_string(Scenario scenario) {
  return scenario == Scenario::kMonologue ? "monologue" : "dialogue";
}

Scenario parse_scenario(std::string_view name) {
  if (name == "monologue") return Scenario::kMonologue;
  if (name == "dialogue") return Scenario::kDialogue;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

void ScenePriors::validate() const {
  if (!(p_single_speaker >= 0.0 && p_single_speaker <= 1.0)) {
    throw std::invalid_argument("p_single_speaker must be in [0, 1]");
  }
  double total = 0.0;
  for (const double p : utterance_count_pmf) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("utterance count probabilities must be in [0, 1]");
    }
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("utterance count pmf sums to " + std::to_string(total));
  }
  if (!(snr_low_db <= snr_high_db)) {
    throw std::invalid_argument("SNR range is reversed");
  }
}

Scenario sample_scenario(const ScenePriors& priors, Rng& rng) {
  return rng.bernoulli(priors.p_single_speaker) ? Scenario::kMonologue
                                                : Scenario::kDialogue;
}

int sample_utterance_count(const ScenePriors& priors, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  int last_nonzero = 1;
  for (int n = 1; n <= kMaxUtterances; ++n) {
    const double p = priors.utterance_count_pmf[n - 1];
    if (p > 0.0) last_nonzero = n;
    cumulative += p;
    if (u < cumulative) return n;
  }
  return last_nonzero;  // rounding slack at the top of the cdf
}

}  // namespace ctta::sim
