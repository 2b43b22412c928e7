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
#include <utility>
#include <vector>

#include "ctta/dsl/time.hpp"
#include "ctta/sed/metrics.hpp"

namespace ctta::sed {

/// Collar test between a truth span and a predicted span, evaluated on the
/// centisecond grid.
bool within_collar(const dsl::TimeSpan& truth, const dsl::TimeSpan& pred, const EbConfig& config);

/// feasible[i][j] says truth i may pair with prediction j.
using Feasibility = std::vector<std::vector<bool>>;

Feasibility collar_graph(std::span<const dsl::TimeSpan> truth,
                         std::span<const dsl::TimeSpan> pred, const EbConfig& config);

/// Maximum-cardinality bipartite matching by augmenting paths. Returns the
/// matched (truth, pred) pairs; no index appears twice.
std::vector<std::pair<std::size_t, std::size_t>> maximum_matching(const Feasibility& feasible,
                                                                  std::size_t n_pred);

}  // namespace ctta::sed
