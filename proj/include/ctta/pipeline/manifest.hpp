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
#include <optional>
#include <string>
#include <vector>

#include "ctta/dsl/annotation.hpp"

namespace ctta::pipeline {

/// One line of a scene manifest. Simulation fields are absent for ingested
/// annotations. Times are seconds on the centisecond grid.
struct SceneRecord {
  std::string id;
  std::optional<std::string> audio;  // relative to the manifest
  std::string caption;
  std::string prompt;  // canonical structured prompt
  std::vector<dsl::EventAnnotation> events;
  std::optional<std::string> scenario;
  std::optional<double> snr_db;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> background;
  std::optional<double> gain;
  std::optional<double> normalization;

  bool operator==(const SceneRecord&) const = default;
};

/// Single-line JSON with a fixed key order.
std::string to_json_line(const SceneRecord& record);
SceneRecord record_from_json_line(std::string_view line);

/// The whole manifest as text, one record per line.
std::string render_manifest(const std::vector<SceneRecord>& records);
std::vector<SceneRecord> read_manifest(const std::filesystem::path& path);

}  // namespace ctta::pipeline
