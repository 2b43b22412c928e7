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

#include <algorithm>
#include <cmath>

#include "ctta/sed/matching.hpp"

namespace ctta::sed {

namespace {

// Collars arrive in seconds; compare in centiseconds with slack for values
// such as 0.2 * 100 that are not exact in binary.
constexpr double kSlack = 1e-9;

bool augment(std::size_t i, const Feasibility& g, std::vector<char>& seen,
             std::vector<std::ptrdiff_t>& owner) {
  for (std::size_t j = 0; j < g[i].size(); ++j) {
    if (!g[i][j] || seen[j]) continue;
    seen[j] = 1;
    if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]), g, seen, owner)) {
      owner[j] = static_cast<std::ptrdiff_t>(i);
      return true;
    }
  }
  return false;
}

}  // namespace

bool within_collar(const dsl::TimeSpan& truth, const dsl::TimeSpan& pred, const EbConfig& config) {
  const double onset = std::abs(static_cast<double>(pred.start.count() - truth.start.count()));
  const double offset = std::abs(static_cast<double>(pred.end.count() - truth.end.count()));
  const double length = static_cast<double>(truth.length().count());
  const double offset_tol =
      std::max(config.offset_collar_abs * 100.0, config.offset_collar_rel * length);
  return onset <= config.onset_collar * 100.0 + kSlack && offset <= offset_tol + kSlack;
}

Feasibility collar_graph(std::span<const dsl::TimeSpan> truth,
                         std::span<const dsl::TimeSpan> pred, const EbConfig& config) {
  Feasibility g(truth.size(), std::vector<bool>(pred.size(), false));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (std::size_t j = 0; j < pred.size(); ++j) g[i][j] = within_collar(truth[i], pred[j], config);
  }
  return g;
}

std::vector<std::pair<std::size_t, std::size_t>> maximum_matching(const Feasibility& feasible,
                                                                  std::size_t n_pred) {
  std::vector<std::ptrdiff_t> owner(n_pred, -1);
  for (std::size_t i = 0; i < feasible.size(); ++i) {
    std::vector<char> seen(n_pred, 0);
    augment(i, feasible, seen, owner);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < n_pred; ++j) {
    if (owner[j] >= 0) pairs.emplace_back(static_cast<std::size_t>(owner[j]), j);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace ctta::sed
