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

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "ctta/audio/waveform.hpp"
#include "ctta/common/rng.hpp"
#include "ctta/pipeline/atomic_file.hpp"
#include "ctta/pipeline/simulate.hpp"
#include "ctta/sim/scene.hpp"

namespace ctta::pipeline {

std::string scene_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scene_%06zu", index);
  return buf;
}

namespace {

SceneRecord make_record(std::size_t index, const sim::ComposedScene& scene,
                        const std::string& audio_rel) {
  SceneRecord r;
  r.id = scene_id(index);
  r.audio = audio_rel;
  r.caption = scene.prompt.caption;
  r.prompt = dsl::serialize(scene.prompt);
  r.events = scene.events;
  r.scenario = std::string(sim::to_string(scene.spec.scenario));
  r.snr_db = scene.spec.snr_db;
  r.seed = scene.spec.seed;
  r.background = scene.spec.background_id;
  r.gain = scene.spec.gain;
  r.normalization = scene.spec.normalization;
  return r;
}

}  // namespace

SimulateResult simulate_scenes(const sim::SpeechPool& speech, const sim::BackgroundPool& backgrounds,
                               const PipelineConfig& config, std::size_t count,
                               const std::filesystem::path& out_dir) {
  const std::uint64_t base_seed = config.require_seed();
  config.priors.validate();
  std::vector<SceneRecord> records(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;

  const auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        const auto scene = sim::compose_scene(speech, backgrounds, config.priors,
                                              Rng::derive(base_seed, i), config.simulation);
        const std::string rel = "audio/" + scene_id(i) + ".wav";
        const auto bytes = audio::encode_wav_pcm16(scene.mix);
        write_file_atomic(out_dir / rel,
                          std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
        records[i] = make_record(i, scene, rel);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        failed.store(true);
      }
    }
  };

  const std::size_t n_workers = std::max<std::size_t>(1, std::min(config.workers, count));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw sim::SimulationError(scene_id(error_index) + ": " + e.what());
    }
  }
  SimulateResult result{out_dir / "manifest.jsonl", std::move(records)};
  write_file_atomic(result.manifest, render_manifest(result.records));
  return result;
}

SimulateResult cmd_simulate(const PipelineConfig& config, std::size_t count,
                            const std::filesystem::path& out_dir) {
  config.require_seed();
  sim::SpeechPool speech;
  sim::BackgroundPool backgrounds;
  if (count > 0) {
    if (config.speech_pool.empty() || config.background_pool.empty()) {
      throw ConfigError("config: pools.speech and pools.background are required to simulate");
    }
    speech = sim::load_speech_pool(config.speech_pool);
    backgrounds = sim::load_background_pool(config.background_pool);
  }
  return simulate_scenes(speech, backgrounds, config, count, out_dir);
}

}  // namespace ctta::pipeline
