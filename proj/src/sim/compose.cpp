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
#include <functional>
#include <numeric>

#include "ctta/sim/scene.hpp"

namespace ctta::sim {

namespace {

constexpr std::int64_t kSamplesPerCentisecond = audio::kModelSampleRate / 100;

struct SpeakerShare {
  std::string speaker;
  int count;
};

// All ways to write n as an ordered sum of k parts in [1, max_part].
std::vector<std::vector<int>> compositions(int n, int k, int max_part) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int parts) {
    if (parts == 0) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    for (int p = 1; p <= std::min(max_part, remaining - (parts - 1)); ++p) {
      current.push_back(p);
      rec(remaining - p, parts - 1);
      current.pop_back();
    }
  };
  rec(n, k);
  return out;
}

std::vector<SpeakerShare> plan_monologue(const SpeechPool& pool, const ScenePriors& priors,
                                         Rng& rng) {
  const int n = sample_utterance_count(priors, rng);
  std::vector<std::string> eligible;
  for (const auto& s : pool.speakers()) {
    if (pool.utterances_of(s).size() >= static_cast<std::size_t>(n)) eligible.push_back(s);
  }
  if (eligible.empty()) {
    throw SimulationError("speech pool exhausted: no speaker has " + std::to_string(n) +
                          " utterances");
  }
  return {{eligible[rng.below(eligible.size())], n}};
}

std::vector<SpeakerShare> plan_dialogue(const SpeechPool& pool, const ScenePriors& priors,
                                        const SimulationOptions& options, Rng& rng) {
  const int min_k = options.min_dialogue_speakers;
  const int max_per = options.max_utterances_per_speaker;
  double mass = 0.0;
  for (int n = min_k; n <= kMaxUtterances; ++n) mass += priors.utterance_count_pmf[n - 1];
  if (!(mass > 0.0)) {
    throw SimulationError("utterance count prior has no mass for a dialogue");
  }
  // The same count prior, conditioned on having enough utterances for a
  // dialogue.
  int n = sample_utterance_count(priors, rng);
  while (n < min_k) n = sample_utterance_count(priors, rng);

  const int available = static_cast<int>(pool.speakers().size());
  std::vector<int> feasible;
  for (int k = min_k; k <= options.max_dialogue_speakers; ++k) {
    if (k <= n && n <= k * max_per && k <= available) feasible.push_back(k);
  }
  if (feasible.empty()) {
    throw SimulationError("speech pool exhausted: cannot seat " + std::to_string(n) +
                          " utterances across " + std::to_string(available) + " speakers");
  }
  const int k = feasible[rng.below(feasible.size())];
  const auto options_for_k = compositions(n, k, max_per);
  const std::vector<int>& parts = options_for_k[rng.below(options_for_k.size())];

  std::vector<std::string> order = pool.speakers();
  rng.shuffle(order);
  std::vector<bool> used(order.size(), false);
  std::vector<SpeakerShare> plan;
  for (const int count : parts) {
    bool seated = false;
    for (std::size_t i = 0; i < order.size() && !seated; ++i) {
      if (!used[i] && pool.utterances_of(order[i]).size() >= static_cast<std::size_t>(count)) {
        used[i] = true;
        plan.push_back({order[i], count});
        seated = true;
      }
    }
    if (!seated) {
      throw SimulationError("speech pool exhausted: no free speaker with " +
                            std::to_string(count) + " utterances");
    }
  }
  return plan;
}

std::vector<std::size_t> pick_utterances(const SpeechPool& pool,
                                         const std::vector<SpeakerShare>& plan, Rng& rng) {
  std::vector<std::size_t> chosen;
  for (const SpeakerShare& share : plan) {
    std::vector<std::size_t> candidates = pool.utterances_of(share.speaker);
    // Partial Fisher-Yates: the first `count` entries become a uniform sample.
    for (int i = 0; i < share.count; ++i) {
      const auto j = static_cast<std::size_t>(i) + rng.below(candidates.size() - i);
      std::swap(candidates[static_cast<std::size_t>(i)], candidates[j]);
      chosen.push_back(candidates[static_cast<std::size_t>(i)]);
    }
  }
  return chosen;
}

dsl::TimeSpan to_span(std::int64_t start, std::int64_t end, std::int64_t clip_length) {
  auto s = std::llround(static_cast<double>(start) / kSamplesPerCentisecond);
  auto e = std::llround(static_cast<double>(end) / kSamplesPerCentisecond);
  if (e <= s) e = s + 1;
  const auto limit = static_cast<long long>(clip_length / kSamplesPerCentisecond);
  if (e > limit) {
    e = limit;
    s = std::min(s, e - 1);
  }
  return {dsl::Centiseconds(s), dsl::Centiseconds(e)};
}

}  // namespace

std::vector<float> render_speech(const SpeechPool& speech, const SceneSpec& spec,
                                 std::size_t clip_length) {
  std::vector<float> track(clip_length, 0.0f);
  for (const Placement& p : spec.placements) {
    const auto& samples = speech.clip(p.clip_index).audio.samples;
    const auto start = static_cast<std::size_t>(p.start);
    for (std::size_t i = 0; i < samples.size() && start + i < clip_length; ++i) {
      track[start + i] += samples[i];
    }
  }
  return track;
}

ComposedScene compose_scene(const SpeechPool& speech, const BackgroundPool& backgrounds,
                            const ScenePriors& priors, std::uint64_t seed,
                            const SimulationOptions& options) {
  priors.validate();
  if (speech.empty()) throw SimulationError("speech pool is empty");
  if (backgrounds.empty()) throw SimulationError("background pool is empty");
  const auto clip_length = static_cast<std::int64_t>(
      std::llround(options.clip_seconds * audio::kModelSampleRate));

  Rng rng(seed);
  ComposedScene scene;
  SceneSpec& spec = scene.spec;
  spec.seed = seed;
  spec.scenario = sample_scenario(priors, rng);
  const auto plan = spec.scenario == Scenario::kMonologue
                        ? plan_monologue(speech, priors, rng)
                        : plan_dialogue(speech, priors, options, rng);

  std::vector<std::size_t> chosen;
  std::vector<std::int64_t> lengths;
  const double budget = options.speech_budget * static_cast<double>(clip_length);
  for (int attempt = 0;; ++attempt) {
    chosen = pick_utterances(speech, plan, rng);
    lengths.clear();
    for (const std::size_t i : chosen) {
      lengths.push_back(static_cast<std::int64_t>(speech.clip(i).length()));
    }
    const auto total = std::accumulate(lengths.begin(), lengths.end(), std::int64_t{0});
    if (static_cast<double>(total) <= budget) break;
    if (attempt >= options.max_arrangement_retries) {
      throw SimulationError("could not fit utterances into the clip after " +
                            std::to_string(options.max_arrangement_retries) + " retries");
    }
  }

  const auto arrangement = arrange_timing(lengths, clip_length, rng, options.speech_budget);
  std::vector<SampleRange> active;
  for (const Arrangement& a : arrangement) {
    const std::size_t clip_index = chosen[a.index];
    spec.placements.push_back(
        {clip_index, speech.clip(clip_index).speaker_id, a.start, lengths[a.index]});
    active.push_back({a.start, a.start + lengths[a.index]});
  }

  spec.background_index = rng.below(backgrounds.size());
  const BackgroundClip& background = backgrounds[spec.background_index];
  if (background.audio.samples.size() != static_cast<std::size_t>(clip_length)) {
    throw SimulationError("background '" + background.id + "' is not one clip long");
  }
  spec.background_id = background.id;
  spec.snr_db = rng.uniform(priors.snr_low_db, priors.snr_high_db);

  const std::vector<float> track =
      render_speech(speech, spec, static_cast<std::size_t>(clip_length));
  MixResult mix = mix_at_snr(track, background.audio.samples, spec.snr_db, active,
                             options.peak_target);
  spec.gain = mix.gain;
  spec.normalization = mix.normalization;
  scene.mix = {audio::kModelSampleRate, 1, std::move(mix.mixed)};

  for (const Placement& p : spec.placements) {
    const UtteranceClip& clip = speech.clip(p.clip_index);
    std::optional<std::string> transcript;
    if (!clip.transcript.empty()) transcript = clip.transcript;
    scene.events.push_back(
        {speech_label(clip), to_span(p.start, p.start + p.length, clip_length), std::move(transcript)});
  }
  scene.prompt = dsl::from_annotations(
      background.caption, scene.events,
      dsl::Centiseconds(clip_length / kSamplesPerCentisecond));
  return scene;
}

}  // namespace ctta::sim
