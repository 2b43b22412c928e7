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

#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "ctta/audio/waveform.hpp"
#include "ctta/sim/scene.hpp"
#include "fixtures.hpp"

namespace ctta {
namespace {

using audio::Waveform;

TEST(Rng, StreamsAreReproducibleAndDerivedSeedsDiffer) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(Rng::derive(1, 0), Rng::derive(1, 1));
  EXPECT_NE(Rng::derive(1, 0), Rng::derive(2, 0));
  EXPECT_EQ(Rng::derive(9, 3), Rng::derive(9, 3));
}

TEST(Rng, DistributionMoments) {
  Rng rng(1);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, se = 0;
  std::vector<int> hist(7, 0);
  for (int i = 0; i < n; ++i) {
    su += rng.uniform();
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    se += rng.exponential();
    ++hist[rng.below(7)];
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.015);
  EXPECT_NEAR(se / n, 1.0, 0.01);
  double chi2 = 0;
  for (const int h : hist) chi2 += std::pow(h - n / 7.0, 2) / (n / 7.0);
  EXPECT_GT(testing::chi_square_pvalue(chi2, 6), 0.001);
}

TEST(Wav, Pcm16RoundTripWithinQuantization) {
  Waveform w{16000, 2, {}};
  for (int i = 0; i < 1000; ++i) {
    w.samples.push_back(static_cast<float>(std::sin(i * 0.01)));
    w.samples.push_back(static_cast<float>(-0.5 * std::cos(i * 0.02)));
  }
  const auto bytes = audio::encode_wav_pcm16(w);
  EXPECT_EQ(bytes.size(), 44u + 4000u);
  const auto back = audio::decode_wav(bytes);
  EXPECT_EQ(back.sample_rate, 16000);
  EXPECT_EQ(back.channels, 2);
  ASSERT_EQ(back.samples.size(), w.samples.size());
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    ASSERT_NEAR(back.samples[i], w.samples[i], 1.0 / 32767);
  }
}

TEST(Wav, RejectsGarbage) {
  std::vector<std::uint8_t> junk(64, 0x11);
  EXPECT_THROW(audio::decode_wav(junk), audio::AudioError);
  auto bytes = audio::encode_wav_pcm16({16000, 1, std::vector<float>(10, 0.1f)});
  bytes.resize(30);
  EXPECT_THROW(audio::decode_wav(bytes), audio::AudioError);
}

TEST(Resample, PreservesInBandToneAndLength) {
  const int from = 44100, to = 16000;
  std::vector<float> tone(from);
  for (int i = 0; i < from; ++i) tone[i] = static_cast<float>(0.5 * std::sin(2 * std::numbers::pi * 440.0 * i / from));
  const auto out = audio::resample(tone, from, to);
  EXPECT_NEAR(static_cast<double>(out.size()), to, 1.0);
  const std::span<const float> mid(out.data() + 1000, out.size() - 2000);
  EXPECT_NEAR(audio::rms(mid), 0.5 / std::sqrt(2.0), 0.01);
}

TEST(Resample, RemovesContentAboveNewNyquist) {
  const int from = 48000, to = 16000;
  std::vector<float> tone(from);
  for (int i = 0; i < from; ++i) tone[i] = static_cast<float>(0.5 * std::sin(2 * std::numbers::pi * 12000.0 * i / from));
  const auto out = audio::resample(tone, from, to);
  const std::span<const float> mid(out.data() + 1000, out.size() - 2000);
  EXPECT_LT(audio::rms(mid), 0.01);
}

TEST(Preprocess, DownmixPadAndCrop) {
  Waveform stereo{8000, 2, {}};
  for (int i = 0; i < 8000 * 3; ++i) {
    stereo.samples.push_back(0.2f);
    stereo.samples.push_back(0.4f);
  }
  const auto padded = audio::preprocess_clip(stereo, audio::CropMode::kHead);
  EXPECT_EQ(padded.channels, 1);
  EXPECT_EQ(padded.sample_rate, 16000);
  EXPECT_EQ(padded.samples.size(), 160000u);
  EXPECT_NEAR(padded.samples[20000], 0.3f, 1e-3);
  EXPECT_EQ(padded.samples[100000], 0.0f);

  Waveform longer{16000, 1, std::vector<float>(16000 * 12)};
  for (std::size_t i = 0; i < longer.samples.size(); ++i) longer.samples[i] = static_cast<float>(i);
  const auto head = audio::preprocess_clip(longer, audio::CropMode::kHead);
  EXPECT_EQ(head.samples.size(), 160000u);
  EXPECT_EQ(head.samples[0], 0.0f);
  Rng rng(3);
  const auto random = audio::preprocess_clip(longer, audio::CropMode::kRandom, &rng);
  EXPECT_EQ(random.samples.size(), 160000u);
  const float offset = random.samples[0];
  EXPECT_GE(offset, 0.0f);
  EXPECT_LE(offset, 32000.0f);
  EXPECT_EQ(random.samples[5] - random.samples[0], 5.0f);
  EXPECT_THROW(audio::preprocess_clip(longer, audio::CropMode::kRandom, nullptr), std::invalid_argument);
}

TEST(Priors, TableNormalization) {
  const auto pmf = sim::default_utterance_pmf();
  const double total = std::accumulate(sim::kUtteranceCountTable.begin(), sim::kUtteranceCountTable.end(), 0.0);
  EXPECT_EQ(total, 39221.0);
  EXPECT_NEAR(std::accumulate(pmf.begin(), pmf.end(), 0.0), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(pmf[0], 12723.0 / 39221.0);
  sim::ScenePriors bad;
  bad.utterance_count_pmf[0] += 0.1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Arrange, DisjointOrderedAndInside) {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    std::vector<std::int64_t> lengths(n);
    for (auto& l : lengths) l = 1 + static_cast<std::int64_t>(rng.below(18000));
    const auto arr = sim::arrange_timing(lengths, 160000, rng);
    ASSERT_EQ(arr.size(), n);
    std::vector<bool> seen(n, false);
    std::int64_t prev_end = 0;
    for (const auto& a : arr) {
      ASSERT_FALSE(seen[a.index]);
      seen[a.index] = true;
      ASSERT_GE(a.start, prev_end);
      prev_end = a.start + lengths[a.index];
      ASSERT_LE(prev_end, 160000);
    }
  }
}

TEST(Arrange, BudgetIsEnforced) {
  Rng rng(1);
  const std::vector<std::int64_t> too_long = {80000, 80000};
  EXPECT_THROW(sim::arrange_timing(too_long, 160000, rng), sim::SimulationError);
  const std::vector<std::int64_t> fits = {76000, 76000};
  EXPECT_NO_THROW(sim::arrange_timing(fits, 160000, rng));
}

TEST(Mix, HitsTargetSnrOverActiveRegion) {
  Rng rng(2);
  std::vector<float> speech(16000, 0.0f), bg(16000);
  for (int i = 4000; i < 8000; ++i) speech[i] = static_cast<float>(0.3 * std::sin(i * 0.05));
  for (auto& b : bg) b = static_cast<float>(0.1 * rng.normal());
  const std::vector<sim::SampleRange> active = {{4000, 8000}};
  const auto m = sim::mix_at_snr(speech, bg, 6.0, active);
  EXPECT_FALSE(m.normalized);
  std::vector<float> noise(16000);
  for (int i = 0; i < 16000; ++i) noise[i] = m.mixed[i] - speech[i];
  const std::span<const float> s(speech.data() + 4000, 4000), nz(noise.data() + 4000, 4000);
  EXPECT_NEAR(20 * std::log10(audio::rms(s) / audio::rms(nz)), 6.0, 1e-3);
}

TEST(Mix, PeakNormalizationKeepsRatio) {
  std::vector<float> speech(1000, 0.9f), bg(1000, 0.9f);
  const auto m = sim::mix_at_snr(speech, bg, 0.0);
  EXPECT_TRUE(m.normalized);
  EXPECT_NEAR(audio::peak(m.mixed), 0.95, 1e-6);
  EXPECT_NEAR(m.normalization, 0.95 / 1.8, 1e-6);
  std::vector<float> silent(1000, 0.0f);
  EXPECT_THROW(sim::mix_at_snr(speech, silent, 5.0), sim::SimulationError);
}

class Scenes : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir("sim");
    const auto paths = testing::write_synthetic_pools(dir_->path(), 11);
    speech_ = new sim::SpeechPool(sim::load_speech_pool(paths.speech));
    backgrounds_ = new sim::BackgroundPool(sim::load_background_pool(paths.background));
  }
  static void TearDownTestSuite() {
    delete speech_;
    delete backgrounds_;
    delete dir_;
  }
  static testing::TempDir* dir_;
  static sim::SpeechPool* speech_;
  static sim::BackgroundPool* backgrounds_;
};
testing::TempDir* Scenes::dir_ = nullptr;
sim::SpeechPool* Scenes::speech_ = nullptr;
sim::BackgroundPool* Scenes::backgrounds_ = nullptr;

TEST_F(Scenes, PoolsLoadInModelFormat) {
  EXPECT_EQ(speech_->speakers().size(), 6u);
  EXPECT_EQ(speech_->clips().size(), 60u);
  ASSERT_EQ(backgrounds_->size(), 4u);
  for (const auto& b : *backgrounds_) {
    EXPECT_EQ(b.audio.sample_rate, 16000);
    EXPECT_EQ(b.audio.channels, 1);
    EXPECT_EQ(b.audio.samples.size(), 160000u);
  }
  EXPECT_EQ(sim::speech_label(speech_->clip(0)), "Man speaking");
}

TEST_F(Scenes, ComposeIsDeterministicAndConsistent) {
  const sim::ScenePriors priors;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto a = sim::compose_scene(*speech_, *backgrounds_, priors, seed);
    const auto b = sim::compose_scene(*speech_, *backgrounds_, priors, seed);
    ASSERT_EQ(a.mix.samples, b.mix.samples);
    ASSERT_EQ(a.prompt, b.prompt);
    ASSERT_EQ(a.mix.samples.size(), 160000u);
    ASSERT_GE(a.spec.snr_db, 2.0);
    ASSERT_LT(a.spec.snr_db, 10.0);
    std::set<std::string> speakers;
    for (const auto& p : a.spec.placements) speakers.insert(p.speaker_id);
    if (a.spec.scenario == sim::Scenario::kMonologue) {
      ASSERT_EQ(speakers.size(), 1u);
    } else {
      ASSERT_GE(speakers.size(), 2u);
      ASSERT_LE(speakers.size(), 4u);
    }
    ASSERT_EQ(a.events.size(), a.spec.placements.size());
    EXPECT_TRUE(dsl::validate(a.prompt).empty());
    EXPECT_EQ(dsl::parse(dsl::serialize(a.prompt)), a.prompt);
    EXPECT_EQ(a.prompt.caption, (*backgrounds_)[a.spec.background_index].caption);
  }
}

TEST_F(Scenes, PoolExhaustionIsReported) {
  sim::ScenePriors priors;
  priors.p_single_speaker = 1.0;
  priors.utterance_count_pmf = {0, 0, 0, 0, 0, 0, 0, 1.0};
  std::vector<sim::UtteranceClip> few(speech_->clips().begin(), speech_->clips().begin() + 5);
  const sim::SpeechPool small(few);
  EXPECT_THROW(sim::compose_scene(small, *backgrounds_, priors, 1), sim::SimulationError);
}

TEST(Pools, ManifestErrors) {
  testing::TempDir dir("pools");
  {
    std::ofstream(dir.path() / "bad.jsonl") << "{\"path\": \"missing.wav\", \"speaker_id\": \"a\", \"transcript\": \"x\"}\n";
  }
  EXPECT_ANY_THROW(sim::load_speech_pool(dir.path() / "bad.jsonl"));
  EXPECT_ANY_THROW(sim::load_speech_pool(dir.path() / "nope.jsonl"));
  audio::write_wav(dir.path() / "long.wav", {16000, 1, std::vector<float>(16000 * 11, 0.1f)});
  {
    std::ofstream(dir.path() / "long.jsonl") << "{\"path\": \"long.wav\", \"speaker_id\": \"a\", \"transcript\": \"x\"}\n";
  }
  EXPECT_ANY_THROW(sim::load_speech_pool(dir.path() / "long.jsonl"));
}

}  // namespace
}  // namespace ctta
