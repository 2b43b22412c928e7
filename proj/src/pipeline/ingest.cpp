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

#include <charconv>
#include <fstream>
#include <map>
#include <stdexcept>

#include "ctta/dsl/prompt.hpp"
#include "ctta/pipeline/atomic_file.hpp"
#include "ctta/pipeline/ingest.hpp"
#include "ctta/sed/annotations_io.hpp"

namespace ctta::pipeline {

namespace {

std::vector<std::string> split_tabs(std::string_view line, std::size_t max_fields) {
  std::vector<std::string> cols;
  while (cols.size() + 1 < max_fields) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) break;
    cols.emplace_back(line.substr(0, tab));
    line.remove_prefix(tab + 1);
  }
  cols.emplace_back(line);
  return cols;
}

template <typename Fn>
void for_each_row(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(line, n);
  }
}

bool parse_index(const std::string& s, std::size_t& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

IngestResult ingest_annotations(const std::filesystem::path& annotations,
                                const std::filesystem::path& transcripts,
                                const std::optional<std::filesystem::path>& captions) {
  auto clips = sed::annotations_from_manifest(annotations);
  IngestResult result;

  std::map<std::string, std::size_t> clip_pos;
  for (std::size_t i = 0; i < clips.size(); ++i) clip_pos[clips[i].clip_id] = i;

  std::map<std::pair<std::string, std::size_t>, std::size_t> seen_transcript;
  for_each_row(transcripts, [&](const std::string& line, std::size_t n) {
    const auto cols = split_tabs(line, 3);
    std::size_t index = 0;
    if (cols.size() < 3 || !parse_index(cols[1], index)) {
      if (n == 1 && cols.size() >= 2 && cols[1] == "event_index") return;  // header
      throw std::runtime_error(transcripts.string() + ":" + std::to_string(n) +
                               ": expected clip_id, event_index, transcript");
    }
    const auto it = clip_pos.find(cols[0]);
    if (it == clip_pos.end() || index >= clips[it->second].events.size()) {
      result.warnings.push_back(transcripts.string() + ":" + std::to_string(n) +
                                ": no annotation for (" + cols[0] + ", " + cols[1] +
                                "); row skipped");
      return;
    }
    if (!seen_transcript.emplace(std::make_pair(cols[0], index), n).second) {
      throw std::runtime_error(transcripts.string() + ":" + std::to_string(n) +
                               ": duplicate transcript for (" + cols[0] + ", " + cols[1] + ")");
    }
    auto& event = clips[it->second].events[index];
    if (!cols[2].empty()) event.transcript = cols[2];
  });

  std::map<std::string, std::string> caption_of;
  if (captions) {
    for_each_row(*captions, [&](const std::string& line, std::size_t n) {
      const auto cols = split_tabs(line, 2);
      if (cols.size() < 2) {
        throw std::runtime_error(captions->string() + ":" + std::to_string(n) +
                                 ": expected clip_id, caption");
      }
      if (n == 1 && cols[0] == "clip_id") return;
      if (!clip_pos.contains(cols[0])) {
        result.warnings.push_back(captions->string() + ":" + std::to_string(n) +
                                  ": caption for unknown clip '" + cols[0] + "'; row skipped");
        return;
      }
      caption_of[cols[0]] = cols[1];
    });
  }

  for (const auto& clip : clips) {
    SceneRecord r;
    r.id = clip.clip_id;
    const auto cap = caption_of.find(clip.clip_id);
    r.caption = cap == caption_of.end() ? std::string() : cap->second;
    r.events = clip.events;
    for (auto& e : r.events) {
      if (e.transcript && e.transcript->empty()) e.transcript.reset();
    }
    try {
      r.prompt = dsl::serialize(dsl::from_annotations(r.caption, r.events));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("clip '" + clip.clip_id + "': " + e.what());
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

IngestResult cmd_ingest(const std::filesystem::path& annotations,
                        const std::filesystem::path& transcripts,
                        const std::optional<std::filesystem::path>& captions,
                        const std::filesystem::path& out) {
  IngestResult result = ingest_annotations(annotations, transcripts, captions);
  write_file_atomic(out, render_manifest(result.records));
  return result;
}

}  // namespace ctta::pipeline
