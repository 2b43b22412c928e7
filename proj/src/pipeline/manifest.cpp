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

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ctta/pipeline/manifest.hpp"

namespace ctta::pipeline {

using nlohmann::ordered_json;

std::string to_json_line(const SceneRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  if (r.audio) j["audio"] = *r.audio;
  j["caption"] = r.caption;
  j["prompt"] = r.prompt;
  ordered_json events = ordered_json::array();
  for (const auto& e : r.events) {
    ordered_json ev;
    ev["label"] = e.label;
    ev["start"] = e.span.start.seconds();
    ev["end"] = e.span.end.seconds();
    if (e.transcript) ev["transcript"] = *e.transcript;
    events.push_back(std::move(ev));
  }
  j["events"] = std::move(events);
  if (r.scenario) j["scenario"] = *r.scenario;
  if (r.snr_db) j["snr_db"] = *r.snr_db;
  if (r.seed) j["seed"] = *r.seed;
  if (r.background) j["background"] = *r.background;
  if (r.gain) j["gain"] = *r.gain;
  if (r.normalization) j["normalization"] = *r.normalization;
  return j.dump();
}

SceneRecord record_from_json_line(std::string_view line) {
  const ordered_json j = ordered_json::parse(line);
  SceneRecord r;
  r.id = j.at("id").get<std::string>();
  if (j.contains("audio")) r.audio = j["audio"].get<std::string>();
  r.caption = j.value("caption", std::string());
  r.prompt = j.value("prompt", std::string());
  for (const auto& e : j.value("events", ordered_json::array())) {
    dsl::EventAnnotation a;
    a.label = e.at("label").get<std::string>();
    a.span = dsl::TimeSpan::from_seconds(e.at("start").get<double>(), e.at("end").get<double>());
    if (e.contains("transcript")) a.transcript = e["transcript"].get<std::string>();
    r.events.push_back(std::move(a));
  }
  if (j.contains("scenario")) r.scenario = j["scenario"].get<std::string>();
  if (j.contains("snr_db")) r.snr_db = j["snr_db"].get<double>();
  if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("background")) r.background = j["background"].get<std::string>();
  if (j.contains("gain")) r.gain = j["gain"].get<double>();
  if (j.contains("normalization")) r.normalization = j["normalization"].get<double>();
  return r;
}

std::string render_manifest(const std::vector<SceneRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json_line(r);
    out += '\n';
  }
  return out;
}

std::vector<SceneRecord> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest " + path.string());
  std::vector<SceneRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json_line(line));
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace ctta::pipeline
