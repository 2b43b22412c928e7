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
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "ctta/sim/scene.hpp"

namespace ctta::sim {

namespace {

using nlohmann::json;

template <class Fn>
void for_each_record(const std::filesystem::path& manifest, Fn&& fn) {
  std::ifstream in(manifest);
  if (!in) throw SimulationError("cannot open manifest " + manifest.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    try {
      fn(json::parse(line));
    } catch (const std::exception& e) {
      throw SimulationError(manifest.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

std::filesystem::path resolve(const std::filesystem::path& manifest, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? p : manifest.parent_path() / p;
}

}  // namespace

SpeechPool::SpeechPool(std::vector<UtteranceClip> clips) : clips_(std::move(clips)) {
  for (std::size_t i = 0; i < clips_.size(); ++i) {
    by_speaker_[clips_[i].speaker_id].push_back(i);
  }
  for (const auto& [speaker, indices] : by_speaker_) speakers_.push_back(speaker);
}

const std::vector<std::size_t>& SpeechPool::utterances_of(const std::string& speaker) const {
  static const std::vector<std::size_t> none;
  const auto it = by_speaker_.find(speaker);
  return it == by_speaker_.end() ? none : it->second;
}

std::optional<Gender> parse_gender(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "m" || lower == "male" || lower == "man") return Gender::kMale;
  if (lower == "f" || lower == "female" || lower == "woman") return Gender::kFemale;
  return std::nullopt;
}

std::string speech_label(const UtteranceClip& clip) {
  if (!clip.gender) return "Speech";
  return *clip.gender == Gender::kMale ? "Man speaking" : "Woman speaking";
}

SpeechPool load_speech_pool(const std::filesystem::path& manifest) {
  std::vector<UtteranceClip> clips;
  for_each_record(manifest, [&](const json& record) {
    UtteranceClip clip;
    clip.source = record.at("path").get<std::string>();
    clip.speaker_id = record.at("speaker_id").get<std::string>();
    clip.transcript = record.at("transcript").get<std::string>();
    if (const auto it = record.find("gender"); it != record.end() && it->is_string()) {
      clip.gender = parse_gender(it->get<std::string>());
    }
    clip.audio = audio::to_model_format(audio::read_wav(resolve(manifest, clip.source)));
    if (clip.duration() > audio::kClipSeconds) {
      throw SimulationError("utterance longer than a clip: " + clip.source);
    }
    clips.push_back(std::move(clip));
  });
  return SpeechPool(std::move(clips));
}

BackgroundPool load_background_pool(const std::filesystem::path& manifest) {
  BackgroundPool pool;
  for_each_record(manifest, [&](const json& record) {
    BackgroundClip clip;
    const auto path = record.at("path").get<std::string>();
    clip.caption = record.at("caption").get<std::string>();
    clip.id = record.value("id", path);
    clip.audio = audio::preprocess_clip(audio::read_wav(resolve(manifest, path)),
                                        audio::CropMode::kHead);
    pool.push_back(std::move(clip));
  });
  return pool;
}

}  // namespace ctta::sim
