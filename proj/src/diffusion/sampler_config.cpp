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
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ctta/diffusion/sampler_config.hpp"
#include "ctta/diffusion/toy_denoiser.hpp"

namespace ctta::diffusion {

using nlohmann::json;

DenoiserKind parse_denoiser_kind(std::string_view name) {
  if (name == "gaussian_oracle") return DenoiserKind::kGaussianOracle;
  if (name == "toy_checkpoint") return DenoiserKind::kToyCheckpoint;
  throw std::invalid_argument("unknown denoiser '" + std::string(name) + "'");
}

std::string_view to_string(DenoiserKind kind) {
  return kind == DenoiserKind::kGaussianOracle ? "gaussian_oracle" : "toy_checkpoint";
}

namespace {

Condition condition_from_json(const json& j) {
  const auto level = parse_condition_level(j.value("level", std::string("null")));
  return Condition::at_level(level, j.value("text", 0), j.value("timing", 0),
                             j.value("phoneme", 0));
}

json condition_to_json(const Condition& c) {
  return {{"level", std::string(to_string(c.level))},
          {"text", c.text},
          {"timing", c.timing},
          {"phoneme", c.phoneme}};
}

GaussianCondition gaussian_from_json(const json& j, const GaussianCondition& fallback) {
  GaussianCondition g = fallback;
  if (j.contains("mu")) g.mu = j.at("mu").get<Latent>();
  if (j.contains("sigma2")) g.sigma2 = j.at("sigma2").get<double>();
  return g;
}

json gaussian_to_json(const GaussianCondition& g) { return {{"mu", g.mu}, {"sigma2", g.sigma2}}; }

}  // namespace

void SamplerConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("sampler config: steps must be at least 1");
  if (chains < 1) throw std::invalid_argument("sampler config: chains must be at least 1");
  if (t1 < 1 || t1 > steps) {
    throw std::invalid_argument("sampler config: t1 must lie in [1, steps]");
  }
  if (!(w_low >= 0.0) || !(w_high >= 0.0)) {
    throw std::invalid_argument("sampler config: guidance scales must be non-negative");
  }
  if (denoiser == DenoiserKind::kToyCheckpoint && checkpoint.empty()) {
    throw std::invalid_argument("sampler config: toy_checkpoint requires a checkpoint path");
  }
  if (denoiser == DenoiserKind::kGaussianOracle) {
    const std::size_t d = oracle.unconditional.mu.size();
    for (const auto* g : {&oracle.unconditional, &oracle.c1, &oracle.c2}) {
      if (g->mu.empty() || g->mu.size() != d) {
        throw std::invalid_argument("sampler config: oracle means must share one non-zero dimension");
      }
      if (!(g->sigma2 > 0.0)) throw std::invalid_argument("sampler config: sigma2 must be positive");
    }
    if (c1.is_null() || c2.is_null()) {
      throw std::invalid_argument("sampler config: oracle conditions must not be null");
    }
  }
}

SamplerConfig parse_sampler_config(std::string_view json_text,
                                   const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("sampler config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("sampler config: expected a JSON object");
  static const char* const kKeys[] = {"steps",  "schedule", "t1",       "w_low",
                                      "w_high", "mode",     "seed",     "chains",
                                      "denoiser", "checkpoint", "c1", "c2", "oracle"};
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys),
                     [&](const char* k) { return key == k; }) == std::end(kKeys)) {
      throw std::invalid_argument("sampler config: unknown key '" + key + "'");
    }
  }
  SamplerConfig c;
  try {
    c.steps = j.value("steps", c.steps);
    if (j.contains("schedule")) c.schedule = parse_schedule_family(j["schedule"].get<std::string>());
    c.t1 = j.value("t1", c.t1);
    c.w_low = j.value("w_low", c.w_low);
    c.w_high = j.value("w_high", c.w_high);
    if (j.contains("mode")) c.mode = parse_reverse_mode(j["mode"].get<std::string>());
    c.seed = j.value("seed", c.seed);
    c.chains = j.value("chains", c.chains);
    if (j.contains("denoiser")) c.denoiser = parse_denoiser_kind(j["denoiser"].get<std::string>());
    if (j.contains("checkpoint")) {
      std::filesystem::path p = j["checkpoint"].get<std::string>();
      c.checkpoint = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
    if (j.contains("c1")) c.c1 = condition_from_json(j["c1"]);
    if (j.contains("c2")) c.c2 = condition_from_json(j["c2"]);
    if (j.contains("oracle")) {
      const json& o = j["oracle"];
      c.oracle.unconditional = gaussian_from_json(o.value("unconditional", json::object()),
                                                  c.oracle.unconditional);
      c.oracle.c1 = gaussian_from_json(o.value("c1", json::object()), c.oracle.c1);
      c.oracle.c2 = gaussian_from_json(o.value("c2", json::object()), c.oracle.c2);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("sampler config: ") + e.what());
  }
  c.validate();
  return c;
}

SamplerConfig load_sampler_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("sampler config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sampler_config(buf.str(), path.parent_path());
}

std::string sampler_config_to_json(const SamplerConfig& c) {
  json j = {{"steps", c.steps},
            {"schedule", std::string(to_string(c.schedule))},
            {"t1", c.t1},
            {"w_low", c.w_low},
            {"w_high", c.w_high},
            {"mode", std::string(to_string(c.mode))},
            {"seed", c.seed},
            {"chains", c.chains},
            {"denoiser", std::string(to_string(c.denoiser))},
            {"c1", condition_to_json(c.c1)},
            {"c2", condition_to_json(c.c2)},
            {"oracle",
             {{"unconditional", gaussian_to_json(c.oracle.unconditional)},
              {"c1", gaussian_to_json(c.oracle.c1)},
              {"c2", gaussian_to_json(c.oracle.c2)}}}};
  if (!c.checkpoint.empty()) j["checkpoint"] = c.checkpoint.string();
  return j.dump(2);
}

std::unique_ptr<Denoiser> make_denoiser(const SamplerConfig& config) {
  if (config.denoiser == DenoiserKind::kToyCheckpoint) {
    if (!std::filesystem::exists(config.checkpoint)) {
      throw CheckpointError("checkpoint not found: " + config.checkpoint.string());
    }
    auto model = std::make_unique<ToyDenoiser>(load_checkpoint(config.checkpoint));
    if (static_cast<int>(model->shape().steps) != config.steps) {
      throw CheckpointError("checkpoint was trained with T=" +
                            std::to_string(model->shape().steps) + " but config has steps=" +
                            std::to_string(config.steps));
    }
    return model;
  }
  std::map<Condition, GaussianCondition> targets;
  targets[config.c1] = config.oracle.c1;
  if (config.c2 != config.c1) targets[config.c2] = config.oracle.c2;
  return std::make_unique<GaussianOracleDenoiser>(config.noise_schedule(),
                                                  config.oracle.unconditional, targets);
}

}  // namespace ctta::diffusion
