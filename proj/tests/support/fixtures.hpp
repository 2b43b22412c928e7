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

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ctta/common/rng.hpp"
#include "ctta/dsl/prompt.hpp"
#include "ctta/sed/matching.hpp"

namespace ctta::testing {

/// The eight structured prompts of the planning-examples table, verbatim.
const std::vector<std::string>& planning_table_prompts();
/// Matching (caption, speech) inputs; empty means none was given.
const std::vector<std::pair<std::string, std::string>>& planning_table_inputs();

/// Random prompt already in canonical shape: trimmed fields, sorted spans,
/// all spans inside [0, 10] s.
dsl::StructuredPrompt random_prompt(Rng& rng);

/// A textual rendering of `p` with random but legal whitespace and span
/// spelling (e.g. "1.5" for 1.50), which must parse back to `p`.
std::string noisy_text(const dsl::StructuredPrompt& p, Rng& rng);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct PoolPaths {
  std::filesystem::path speech;
  std::filesystem::path background;
};

/// Writes a small synthetic corpus: `speakers` speakers with `per_speaker`
/// voiced utterances of 0.4-1.1 s (16 kHz mono, alternating gender), and
/// `backgrounds` 10 s stationary noise beds at 22.05 kHz stereo.
PoolPaths write_synthetic_pools(const std::filesystem::path& dir, std::uint64_t seed,
                                int speakers = 6, int per_speaker = 10, int backgrounds = 4);

/// Greedy foil: truth events in onset order each take the earliest-onset
/// unmatched feasible prediction.
std::size_t greedy_matching_size(std::span<const dsl::TimeSpan> truth,
                                 std::span<const dsl::TimeSpan> pred, const sed::EbConfig& config);

/// Maximum matching size by exhaustive search over assignments.
std::size_t brute_force_matching_size(const sed::Feasibility& feasible, std::size_t n_pred);

/// p-value of the one-sample Kolmogorov-Smirnov statistic against N(mu, sigma2).
double ks_normal_pvalue(std::vector<double> samples, double mu, double sigma2);
/// Upper tail of the chi-square distribution.
double chi_square_pvalue(double statistic, int dof);

}  // namespace ctta::testing
