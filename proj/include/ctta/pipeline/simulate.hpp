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

#include "ctta/pipeline/config.hpp"
#include "ctta/pipeline/manifest.hpp"
#include "ctta/sim/pools.hpp"

namespace ctta::pipeline {

struct SimulateResult {
  std::filesystem::path manifest;
  std::vector<SceneRecord> records;
};

/// Scene i uses seed Rng::derive(dataset_seed, i) and is written to
/// `out_dir/audio/scene_NNNNNN.wav`; the manifest goes to
/// `out_dir/manifest.jsonl` only after every scene succeeded. Output bytes
/// depend on the config and count alone, not on the worker count.
SimulateResult simulate_scenes(const sim::SpeechPool& speech, const sim::BackgroundPool& backgrounds,
                               const PipelineConfig& config, std::size_t count,
                               const std::filesystem::path& out_dir);

/// Loads the configured pools (skipped when count is 0) and runs
/// simulate_scenes.
SimulateResult cmd_simulate(const PipelineConfig& config, std::size_t count,
                            const std::filesystem::path& out_dir);

std::string scene_id(std::size_t index);

}  // namespace ctta::pipeline
