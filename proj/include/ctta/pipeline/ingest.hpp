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

#include "ctta/pipeline/manifest.hpp"

namespace ctta::pipeline {

struct IngestResult {
  std::vector<SceneRecord> records;
  std::vector<std::string> warnings;
};

/// Joins timed annotations (clip_id, label, start, end) with transcripts
/// (clip_id, event_index, transcript), where event_index counts a clip's
/// annotation rows from 0 in file order. Events without a transcript row, or
/// with an empty transcript, stay non-speech timing events. Transcript rows
/// that name no annotation are skipped with a warning. Captions come from an
/// optional (clip_id, caption) table and default to empty.
IngestResult ingest_annotations(const std::filesystem::path& annotations,
                                const std::filesystem::path& transcripts,
                                const std::optional<std::filesystem::path>& captions = {});

/// ingest_annotations, then writes the manifest atomically to `out`.
IngestResult cmd_ingest(const std::filesystem::path& annotations,
                        const std::filesystem::path& transcripts,
                        const std::optional<std::filesystem::path>& captions,
                        const std::filesystem::path& out);

}  // namespace ctta::pipeline
