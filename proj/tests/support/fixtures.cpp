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

#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include "ctta/audio/waveform.hpp"

namespace ctta::testing {

const std::vector<std::string>& planning_table_prompts() {
  static const std::vector<std::string> rows = {
      R"(She is talking in the park. @{park ambient sounds. & <0.00, 10.00>}@{Female speech, woman speaking. & <1.50, 6.00> "Good morning! How are you feeling today?"})",
      R"(A child yelling as a young boy talks during several slaps on a hard surface. @{Young boy speaking & <1.50,8.00> "Say yeah, baby. Say yeah, baby. Are you over tired?"} @{Child yelling & <2.00,6.00>} @{slaps on a hard surface & <2.50,3.00> <5.00,5.50>})",
      R"(A female speaking with some rustling followed by another female speaking. @{Female speech, woman speaking & <0.50,6.00> "The IT services at the King's University College are proud to announce that"} @{rustling & <1.00,5.00>} @{Female speech, woman speaking & <6.50,8.00> "we have launched"})",
      R"(A duck quacks followed by a man talking while birds chirp in the distance. @{duck quack & <0.50,1.50>} @{Man speaking & <2.00,7.50> "Mama Mama snow mama come over here, baby"} @{birds chirping in the distance & <2.50,4.00> <5.50,7.00>})",
      R"(Two men speaking with loud insects buzzing. @{Man speaking & <1.00,4.50> "I've got gloves covered in mid repellent."} @{Man speaking & <5.00,6.50> "Still fishing."} @{loud insects buzzing & <0.00,10.00>})",
      R"(A man speaking as a stream of water splashes and flows while music faintly plays in the distance. @{Man speaking & <0.50,9.50> "in the amateur show tonight then tomorrow on Saturday the broadcasters and the other amateur cast will be going out hope to do well there get some good footage hope you enjoy"} @{water splashing and flowing & <0.00,10.00>} @{faint music in the distance & <0.00,10.00>})",
      R"(People are giggling, and a man speaks. @{people giggling & <1.00,5.00>} @{Man speaking & <2.50,4.50> "What's so funny?"})",
      R"(A person is giving instructions or explaining a procedure. @{Man speaking & <1.00,9.00> "Some people talk about fucking the heads, but the way I do it, I just put my finger down there and pull it out."})",
  };
  return rows;
}

const std::vector<std::pair<std::string, std::string>>& planning_table_inputs() {
  static const std::vector<std::pair<std::string, std::string>> rows = {
      {"She is talking in the park.", "Good morning! How are you feeling today?"},
      {"A child yelling as a young boy talks during several slaps on a hard surface",
       "Say yeah, baby. Say yeah, baby. Are you over tired?"},
      {"A female speaking with some rustling followed by another female speaking",
       "The IT services at the King's University College are proud to announce that we have "
       "launched"},
      {"A duck quacks followed by a man talking while birds chirp in the distance",
       "Mama Mama snow mama come over here, baby"},
      {"Two men speaking with loud insects buzzing",
       "I've got gloves covered in mid repellent. Still fishing."},
      {"A man speaking as a stream of water splashes and flows while music faintly plays in the "
       "distance",
       "in the amateur show tonight then tomorrow on Saturday the broadcasters and the other "
       "amateur cast will be going out hope to do well there get some good footage hope you "
       "enjoy"},
      {"People are giggling, and a man speaks", ""},
      {"", "Some people talk about fucking the heads, but the way I do it, I just put my finger "
           "down there and pull it out."},
  };
  return rows;
}

namespace {

// Printable ASCII minus the characters each field may not contain.
std::string random_word(Rng& rng, std::string_view forbidden, std::size_t max_len) {
  static constexpr std::string_view kPool =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789.,;:!?'()-_/<>[]*+=#$%^|~@{}&\"\\";
  const std::size_t len = 1 + rng.below(max_len);
  std::string out;
  while (out.size() < len) {
    const char c = kPool[rng.below(kPool.size())];
    if (forbidden.find(c) != std::string_view::npos) continue;
    if (c == '{' && !out.empty() && out.back() == '@') continue;
    out.push_back(c);
  }
  return out;
}

std::string random_phrase(Rng& rng, std::string_view forbidden, std::size_t max_words) {
  const std::size_t words = 1 + rng.below(max_words);
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i > 0) out += rng.bernoulli(0.1) ? "  " : " ";
    std::string w = random_word(rng, forbidden, 8);
    // Never let a word start with '{' after an '@' at the end of the previous one.
    if (!out.empty() && out.back() == '@' && w.front() == '{') w.front() = 'x';
    out += w;
  }
  return out;
}

}  // namespace

dsl::StructuredPrompt random_prompt(Rng& rng) {
  dsl::StructuredPrompt p;
  if (!rng.bernoulli(0.1)) p.caption = random_phrase(rng, "", 8);
  if (!p.caption.empty() && p.caption.back() == '@') p.caption.back() = '.';
  const std::size_t n_events = rng.below(5);
  for (std::size_t e = 0; e < n_events; ++e) {
    dsl::EventSpec ev;
    ev.description = random_phrase(rng, "\"&}", 4);
    if (ev.description.back() == '@') ev.description.back() = '.';
    const std::size_t n_spans = 1 + rng.below(3);
    for (std::size_t s = 0; s < n_spans; ++s) {
      const auto a = static_cast<std::int64_t>(rng.below(1000));
      const auto b = a + 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(1000 - a)));
      ev.spans.push_back({dsl::Centiseconds(a), dsl::Centiseconds(b)});
    }
    std::sort(ev.spans.begin(), ev.spans.end());
    if (rng.bernoulli(0.5)) ev.speech = random_phrase(rng, "", 10);
    if (rng.bernoulli(0.05)) ev.speech = std::string();
    p.events.push_back(std::move(ev));
  }
  return p;
}

std::string noisy_text(const dsl::StructuredPrompt& p, Rng& rng) {
  const auto ws = [&] {
    static constexpr std::string_view kWs[] = {"", " ", "  ", "\t", "\n", " \t "};
    return std::string(kWs[rng.below(std::size(kWs))]);
  };
  const auto number = [&](dsl::Centiseconds c) {
    const auto whole = c.count() / 100, frac = c.count() % 100;
    std::string s = std::to_string(whole);
    if (frac == 0) {
      const auto pick = rng.below(3);
      return pick == 0 ? s : pick == 1 ? s + ".0" : s + ".00";
    }
    if (frac % 10 == 0 && rng.bernoulli(0.5)) return s + "." + std::to_string(frac / 10);
    return s + (frac < 10 ? ".0" : ".") + std::to_string(frac);
  };
  std::string out = ws() + p.caption;
  for (const auto& e : p.events) {
    out += ws() + "@{" + ws() + e.description + ws() + "&";
    for (const auto& s : e.spans) {
      out += ws() + "<" + ws() + number(s.start) + ws() + "," + ws() + number(s.end) + ws() + ">";
    }
    if (e.speech) {
      out += ws() + "\"";
      for (const char c : *e.speech) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
      }
      out += "\"";
    }
    out += ws() + "}";
  }
  return out + ws();
}

TempDir::TempDir(const std::string& tag) {
  static std::uint64_t counter = 0;
  Rng rng(reinterpret_cast<std::uintptr_t>(this) ^ static_cast<std::uint64_t>(std::time(nullptr)));
  for (;;) {
    path_ = std::filesystem::temp_directory_path() /
            ("ctta_" + tag + "_" + std::to_string(rng.next_u64() % 1000000007) + "_" +
             std::to_string(counter++));
    if (std::filesystem::create_directories(path_)) return;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

namespace {

constexpr const char* kWords[] = {"hello", "world", "good", "morning", "rain", "today", "water",
                                  "music", "park", "time", "people", "house", "still", "over"};
constexpr const char* kBackgrounds[] = {"rain on a tin roof", "a busy street with traffic",
                                        "wind blowing through trees", "a humming refrigerator",
                                        "crowd murmur in a hall"};

}  // namespace

PoolPaths write_synthetic_pools(const std::filesystem::path& dir, std::uint64_t seed, int speakers,
                                int per_speaker, int backgrounds) {
  namespace fs = std::filesystem;
  Rng rng(seed);
  fs::create_directories(dir / "speech");
  fs::create_directories(dir / "background");
  PoolPaths paths{dir / "speech.jsonl", dir / "background.jsonl"};

  std::ostringstream speech_manifest;
  for (int s = 0; s < speakers; ++s) {
    const bool male = s % 2 == 0;
    const double f0 = male ? 110.0 + 10.0 * s : 200.0 + 10.0 * s;
    for (int u = 0; u < per_speaker; ++u) {
      const double seconds = 0.4 + 0.7 * rng.uniform();
      const auto n = static_cast<std::size_t>(std::llround(seconds * audio::kModelSampleRate));
      audio::Waveform w{audio::kModelSampleRate, 1, std::vector<float>(n)};
      const double syllable_rate = 3.0 + 2.0 * rng.uniform();
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / audio::kModelSampleRate;
        const double env = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * syllable_rate * t));
        double v = 0.0;
        for (int h = 1; h <= 4; ++h) v += std::sin(2.0 * std::numbers::pi * f0 * h * t) / h;
        w.samples[i] = static_cast<float>(0.25 * env * v);
      }
      const std::string rel = "speech/spk" + std::to_string(s) + "_" + std::to_string(u) + ".wav";
      audio::write_wav(dir / rel, w);
      std::string transcript;
      const std::size_t words = 1 + rng.below(4);
      for (std::size_t k = 0; k < words; ++k) {
        transcript += (k ? " " : "") + std::string(kWords[rng.below(std::size(kWords))]);
      }
      nlohmann::ordered_json j;
      j["path"] = rel;
      j["speaker_id"] = "spk" + std::to_string(s);
      j["transcript"] = transcript;
      j["gender"] = male ? "male" : "female";
      speech_manifest << j.dump() << "\n";
    }
  }
  std::ofstream(paths.speech) << speech_manifest.str();

  std::ostringstream bg_manifest;
  constexpr int kRate = 22050;
  for (int b = 0; b < backgrounds; ++b) {
    const std::size_t frames = 10 * kRate;
    audio::Waveform w{kRate, 2, std::vector<float>(2 * frames)};
    double brown = 0.0;
    const double level = 0.05 + 0.05 * b;
    for (std::size_t i = 0; i < frames; ++i) {
      brown = 0.98 * brown + 0.2 * rng.normal();
      const double white = rng.normal();
      const double v = level * (0.7 * white + 0.3 * brown);
      w.samples[2 * i] = static_cast<float>(v);
      w.samples[2 * i + 1] = static_cast<float>(0.8 * v + 0.2 * level * rng.normal());
    }
    const std::string rel = "background/bg" + std::to_string(b) + ".wav";
    audio::write_wav(dir / rel, w);
    nlohmann::ordered_json j;
    j["path"] = rel;
    j["caption"] = kBackgrounds[b % std::size(kBackgrounds)];
    j["id"] = "bg" + std::to_string(b);
    bg_manifest << j.dump() << "\n";
  }
  std::ofstream(paths.background) << bg_manifest.str();
  return paths;
}

std::size_t greedy_matching_size(std::span<const dsl::TimeSpan> truth,
                                 std::span<const dsl::TimeSpan> pred,
                                 const sed::EbConfig& config) {
  std::vector<std::size_t> ti(truth.size()), pi(pred.size());
  for (std::size_t i = 0; i < ti.size(); ++i) ti[i] = i;
  for (std::size_t j = 0; j < pi.size(); ++j) pi[j] = j;
  std::stable_sort(ti.begin(), ti.end(), [&](auto a, auto b) { return truth[a] < truth[b]; });
  std::stable_sort(pi.begin(), pi.end(), [&](auto a, auto b) { return pred[a] < pred[b]; });
  std::vector<bool> used(pred.size(), false);
  std::size_t matched = 0;
  for (const auto i : ti) {
    for (const auto j : pi) {
      if (!used[j] && sed::within_collar(truth[i], pred[j], config)) {
        used[j] = true;
        ++matched;
        break;
      }
    }
  }
  return matched;
}

std::size_t brute_force_matching_size(const sed::Feasibility& feasible, std::size_t n_pred) {
  std::vector<bool> used(n_pred, false);
  std::function<std::size_t(std::size_t)> best = [&](std::size_t i) -> std::size_t {
    if (i == feasible.size()) return 0;
    std::size_t result = best(i + 1);  // leave truth i unmatched
    for (std::size_t j = 0; j < n_pred; ++j) {
      if (feasible[i][j] && !used[j]) {
        used[j] = true;
        result = std::max(result, 1 + best(i + 1));
        used[j] = false;
      }
    }
    return result;
  };
  return best(0);
}

double ks_normal_pvalue(std::vector<double> samples, double mu, double sigma2) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  const double sigma = std::sqrt(sigma2);
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-(samples[i] - mu) / (sigma * std::sqrt(2.0)));
    d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  // Asymptotic Kolmogorov distribution with the Stephens small-sample factor.
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    p += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-12) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

double chi_square_pvalue(double statistic, int dof) {
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

}  // namespace ctta::testing
