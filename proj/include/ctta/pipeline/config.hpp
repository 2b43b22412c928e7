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
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "ctta/diffusion/sampler_config.hpp"
#include "ctta/lex/lexicon.hpp"
#include "ctta/sim/priors.hpp"
#include "ctta/sim/scene.hpp"

namespace ctta::pipeline {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kPlannerKeyEnv = "PLANNER_API_KEY";

struct PlannerConfig {
  std::string endpoint;  // full URL of a chat-completions route
  std::string model;
  double timeout_seconds = 60.0;
  /// Resolved from the environment, never from the config file.
  std::optional<std::string> api_key;
};

struct PipelineConfig {
  std::optional<std::uint64_t> dataset_seed;
  std::filesystem::path output_dir = "out";
  std::size_t workers = 1;
  sim::ScenePriors priors;
  sim::SimulationOptions simulation;
  std::filesystem::path speech_pool;
  std::filesystem::path background_pool;
  diffusion::SamplerConfig sampler;
  std::filesystem::path lexicon_path;
  lex::OovPolicy oov_policy = lex::OovPolicy::kError;
  PlannerConfig planner;

  /// The reproducibility contract: generation commands need a seed.
  std::uint64_t require_seed() const;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

/// The process environment.
std::optional<std::string> process_env(const char* name);

/// JSON object; relative paths resolve against `base_dir`. Unknown keys and a
/// literal "api_key" are rejected. `env` supplies PLANNER_API_KEY.
PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir,
                            const EnvLookup& env = process_env);
PipelineConfig load_config(const std::filesystem::path& path, const EnvLookup& env = process_env);

/// Defaults with `lexicon_path` pointing at the shipped dictionary.
PipelineConfig default_config(const EnvLookup& env = process_env);

/// Location of the bundled CMU-format dictionary.
std::filesystem::path default_lexicon_path();

}  // namespace ctta::pipeline
