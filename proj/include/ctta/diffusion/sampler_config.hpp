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

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "ctta/diffusion/gaussian_oracle.hpp"
#include "ctta/diffusion/sampler.hpp"

namespace ctta::diffusion {

enum class DenoiserKind { kGaussianOracle, kToyCheckpoint };

DenoiserKind parse_denoiser_kind(std::string_view name);
std::string_view to_string(DenoiserKind kind);

/// Targets for the analytic denoiser: the null branch plus one Gaussian for
/// each of the two sampling conditions.
struct OracleTargets {
  GaussianCondition unconditional{Latent(2, 0.0), 1.0};
  GaussianCondition c1{Latent(2, 1.0), 0.25};
  GaussianCondition c2{Latent(2, 2.0), 0.25};
};

/// Everything `sample` needs. JSON keys match the field names; every key is
/// optional and falls back to the defaults below.
struct SamplerConfig {
  int steps = 100;
  ScheduleFamily schedule = ScheduleFamily::kCosine;
  int t1 = 88;
  double w_low = 3.0;
  double w_high = 9.0;
  ReverseMode mode = ReverseMode::kAncestral;
  std::uint64_t seed = 0;
  std::size_t chains = 1;
  DenoiserKind denoiser = DenoiserKind::kGaussianOracle;
  std::filesystem::path checkpoint;
  Condition c1 = Condition::text_timing(1, 1);
  Condition c2 = Condition::full(1, 1, 1);
  OracleTargets oracle;

  GuidanceSchedule guidance() const { return {c1, c2, w_low, w_high, t1, steps}; }
  NoiseSchedule noise_schedule() const { return NoiseSchedule::make(schedule, steps); }
  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

/// Relative checkpoint paths resolve against `base_dir`.
SamplerConfig parse_sampler_config(std::string_view json_text,
                                   const std::filesystem::path& base_dir = {});
SamplerConfig load_sampler_config(const std::filesystem::path& path);
std::string sampler_config_to_json(const SamplerConfig& config);

/// Builds the configured denoiser. Throws CheckpointError when the checkpoint
/// is missing or its step count disagrees with the config.
std::unique_ptr<Denoiser> make_denoiser(const SamplerConfig& config);

}  // namespace ctta::diffusion
