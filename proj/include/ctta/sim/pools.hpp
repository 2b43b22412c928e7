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

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctta/audio/waveform.hpp"

namespace ctta::sim {

enum class Gender { kMale, kFemale };

struct UtteranceClip {
  audio::Waveform audio;  // mono, 16 kHz
  std::string speaker_id;
  std::string transcript;
  std::optional<Gender> gender;
  std::string source;

  std::size_t length() const { return audio.samples.size(); }
  double duration() const { return audio.duration(); }
};

/// Clean utterances grouped by speaker. Read-only once built.
class SpeechPool {
 public:
  SpeechPool() = default;
  explicit SpeechPool(std::vector<UtteranceClip> clips);

  const std::vector<UtteranceClip>& clips() const { return clips_; }
  const UtteranceClip& clip(std::size_t index) const { return clips_.at(index); }
  /// Speaker ids in sorted order.
  const std::vector<std::string>& speakers() const { return speakers_; }
  const std::vector<std::size_t>& utterances_of(const std::string& speaker) const;
  bool empty() const { return clips_.empty(); }

 private:
  std::vector<UtteranceClip> clips_;
  std::vector<std::string> speakers_;
  std::map<std::string, std::vector<std::size_t>> by_speaker_;
};

struct BackgroundClip {
  audio::Waveform audio;  // mono, 16 kHz, exactly one clip long
  std::string id;
  std::string caption;
};

using BackgroundPool = std::vector<BackgroundClip>;

std::optional<Gender> parse_gender(std::string_view text);

/// Line-delimited JSON records `{"path", "speaker_id", "transcript",
/// "gender"?}`. Relative paths resolve against the manifest's directory.
/// Audio is converted to 16 kHz mono; clips longer than 10 s are rejected.
SpeechPool load_speech_pool(const std::filesystem::path& manifest);

/// Records `{"path", "caption", "id"?}`. Audio is brought to 10 s by taking
/// the head and zero-padding.
BackgroundPool load_background_pool(const std::filesystem::path& manifest);

}  // namespace ctta::sim
