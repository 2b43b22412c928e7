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
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "ctta/pipeline/config.hpp"

#ifndef CTTA_DEFAULT_DATA_DIR
#define CTTA_DEFAULT_DATA_DIR "data"
#endif

namespace ctta::pipeline {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::string_view where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError("config: '" + std::string(where) + "' must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key == "api_key" || key == "token") {
      throw ConfigError(std::string("config: secrets do not belong in the config file; set ") +
                        kPlannerKeyEnv + " instead");
    }
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError("config: unknown key '" + key + "' in " + std::string(where));
    }
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

}  // namespace

std::uint64_t PipelineConfig::require_seed() const {
  if (!dataset_seed) throw ConfigError("config: dataset_seed is required for generation");
  return *dataset_seed;
}

std::optional<std::string> process_env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

std::filesystem::path default_lexicon_path() {
  if (const auto dir = process_env("CTTA_DATA_DIR")) {
    return std::filesystem::path(*dir) / "lexicon" / "cmudict.dict";
  }
  return std::filesystem::path(CTTA_DEFAULT_DATA_DIR) / "lexicon" / "cmudict.dict";
}

PipelineConfig default_config(const EnvLookup& env) {
  PipelineConfig c;
  c.lexicon_path = default_lexicon_path();
  if (const auto key = env(kPlannerKeyEnv); key && !key->empty()) c.planner.api_key = key;
  return c;
}

PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir,
                            const EnvLookup& env) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  check_keys(j, "config",
             {"dataset_seed", "output_dir", "workers", "pools", "priors", "simulation", "sampler",
              "lexicon", "oov_policy", "planner"});
  PipelineConfig c = default_config(env);
  try {
    if (j.contains("dataset_seed")) c.dataset_seed = j["dataset_seed"].get<std::uint64_t>();
    if (j.contains("output_dir")) c.output_dir = resolve(base_dir, j["output_dir"].get<std::string>());
    c.workers = j.value("workers", c.workers);
    if (j.contains("pools")) {
      const json& p = j["pools"];
      check_keys(p, "pools", {"speech", "background"});
      if (p.contains("speech")) c.speech_pool = resolve(base_dir, p["speech"].get<std::string>());
      if (p.contains("background")) {
        c.background_pool = resolve(base_dir, p["background"].get<std::string>());
      }
    }
    if (j.contains("priors")) {
      const json& p = j["priors"];
      check_keys(p, "priors",
                 {"p_single_speaker", "utterance_count_pmf", "snr_low_db", "snr_high_db"});
      c.priors.p_single_speaker = p.value("p_single_speaker", c.priors.p_single_speaker);
      if (p.contains("utterance_count_pmf")) {
        const auto v = p["utterance_count_pmf"].get<std::vector<double>>();
        if (v.size() != c.priors.utterance_count_pmf.size()) {
          throw ConfigError("config: utterance_count_pmf needs 8 entries");
        }
        std::copy(v.begin(), v.end(), c.priors.utterance_count_pmf.begin());
      }
      c.priors.snr_low_db = p.value("snr_low_db", c.priors.snr_low_db);
      c.priors.snr_high_db = p.value("snr_high_db", c.priors.snr_high_db);
    }
    if (j.contains("simulation")) {
      const json& s = j["simulation"];
      check_keys(s, "simulation",
                 {"speech_budget", "max_arrangement_retries", "min_dialogue_speakers",
                  "max_dialogue_speakers", "max_utterances_per_speaker", "peak_target"});
      auto& o = c.simulation;
      o.speech_budget = s.value("speech_budget", o.speech_budget);
      o.max_arrangement_retries = s.value("max_arrangement_retries", o.max_arrangement_retries);
      o.min_dialogue_speakers = s.value("min_dialogue_speakers", o.min_dialogue_speakers);
      o.max_dialogue_speakers = s.value("max_dialogue_speakers", o.max_dialogue_speakers);
      o.max_utterances_per_speaker =
          s.value("max_utterances_per_speaker", o.max_utterances_per_speaker);
      o.peak_target = s.value("peak_target", o.peak_target);
    }
    if (j.contains("sampler")) c.sampler = diffusion::parse_sampler_config(j["sampler"].dump(), base_dir);
    if (j.contains("lexicon")) c.lexicon_path = resolve(base_dir, j["lexicon"].get<std::string>());
    if (j.contains("oov_policy")) c.oov_policy = lex::parse_oov_policy(j["oov_policy"].get<std::string>());
    if (j.contains("planner")) {
      const json& p = j["planner"];
      check_keys(p, "planner", {"endpoint", "model", "timeout_seconds"});
      c.planner.endpoint = p.value("endpoint", c.planner.endpoint);
      c.planner.model = p.value("model", c.planner.model);
      c.planner.timeout_seconds = p.value("timeout_seconds", c.planner.timeout_seconds);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  try {
    c.priors.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.workers == 0) throw ConfigError("config: workers must be at least 1");
  if (!(c.planner.timeout_seconds > 0.0)) throw ConfigError("config: timeout_seconds must be positive");
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path, const EnvLookup& env) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path(), env);
}

}  // namespace ctta::pipeline
