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
#include <vector>

#include "ctta/diffusion/sampler.hpp"
#include "ctta/diffusion/sampler_config.hpp"

namespace ctta::pipeline {

struct SampleResult {
  std::vector<diffusion::Latent> samples;     // one per chain
  std::vector<diffusion::StepRecord> steps;   // chain 0 only
  std::filesystem::path samples_path;
  std::filesystem::path steps_path;
};

/// Runs `chains` progressive-guidance trajectories. Chain i draws z_T and
/// its ancestral noise from Rng(Rng::derive(seed, i)). Writes
///   samples.jsonl    {"chain", "z0"} per chain
///   steps.tsv        chain, step, phase, condition, w for every step
///   trajectory.jsonl {"chain", "t", "z"} per step, when requested
/// under `out_dir`. Throws CheckpointError for a missing checkpoint.
SampleResult cmd_sample(const diffusion::SamplerConfig& config, const std::filesystem::path& out_dir,
                        bool dump_trajectory = false);

}  // namespace ctta::pipeline
