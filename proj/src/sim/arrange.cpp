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
#include <numeric>
#include <string>

#include "ctta/sim/scene.hpp"

namespace ctta::sim {

std::vector<Arrangement> arrange_timing(std::span<const std::int64_t> lengths,
                                        std::int64_t clip_length, Rng& rng,
                                        double budget) {
  const std::int64_t total = std::accumulate(lengths.begin(), lengths.end(), std::int64_t{0});
  for (const std::int64_t len : lengths) {
    if (len <= 0) throw SimulationError("utterance lengths must be positive");
  }
  if (static_cast<double>(total) > budget * static_cast<double>(clip_length)) {
    throw SimulationError("speech (" + std::to_string(total) +
                          " samples) exceeds the placement budget of " +
                          std::to_string(budget * static_cast<double>(clip_length)));
  }
  if (total > clip_length) throw SimulationError("speech longer than the clip");

  std::vector<std::size_t> order(lengths.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);

  // Flat Dirichlet over n + 1 gaps via normalized exponentials; only the
  // first n cumulative fractions are needed to place the starts.
  std::vector<double> weights(lengths.size() + 1);
  for (double& w : weights) w = rng.exponential();
  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  const auto silence = static_cast<double>(clip_length - total);

  std::vector<Arrangement> out;
  out.reserve(lengths.size());
  double cumulative = 0.0;
  std::int64_t speech_before = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    cumulative += weights[k];
    const double fraction = weight_sum > 0.0 ? cumulative / weight_sum
                                             : static_cast<double>(k + 1) / weights.size();
    const auto gap_before = std::min(static_cast<std::int64_t>(std::llround(silence * fraction)),
                                     clip_length - total);
    out.push_back({order[k], gap_before + speech_before});
    speech_before += lengths[order[k]];
  }
  return out;
}

}  // namespace ctta::sim
