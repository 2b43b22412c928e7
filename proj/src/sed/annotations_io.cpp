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

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "ctta/sed/annotations_io.hpp"

namespace ctta::sed {

using nlohmann::json;

AnnotationFormatError::AnnotationFormatError(const std::string& source, std::size_t line,
                                             const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         ": " + what),
      line_(line) {}

namespace {

constexpr std::int64_t kClipLimit = dsl::kDefaultClipDuration.count();

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

dsl::TimeSpan checked_span(double start, double end, const std::string& source, std::size_t line) {
  const dsl::TimeSpan span = dsl::TimeSpan::from_seconds(start, end);
  if (span.start.count() < 0) throw AnnotationFormatError(source, line, "negative start");
  if (span.start > span.end) throw AnnotationFormatError(source, line, "start is after end");
  if (span.end.count() > kClipLimit) {
    throw AnnotationFormatError(source, line, "end exceeds the 10 s clip");
  }
  return span;
}

std::vector<ClipAnnotations> read_jsonl(std::istream& in, const std::string& source) {
  std::vector<ClipAnnotations> out;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      ClipAnnotations clip;
      clip.clip_id = j.at("id").get<std::string>();
      if (clip.clip_id.empty()) throw AnnotationFormatError(source, n, "empty id");
      for (const auto& e : j.value("events", json::array())) {
        EventAnnotation a;
        a.label = e.at("label").get<std::string>();
        if (trim(a.label).empty()) throw AnnotationFormatError(source, n, "empty label");
        a.span = checked_span(e.at("start").get<double>(), e.at("end").get<double>(), source, n);
        if (e.contains("transcript") && !e["transcript"].is_null()) {
          a.transcript = e["transcript"].get<std::string>();
        }
        clip.events.push_back(std::move(a));
      }
      if (!seen.emplace(clip.clip_id, n).second) {
        throw AnnotationFormatError(source, n, "duplicate clip id '" + clip.clip_id + "'");
      }
      out.push_back(std::move(clip));
    } catch (const json::exception& e) {
      throw AnnotationFormatError(source, n, e.what());
    }
  }
  return out;
}

std::vector<ClipAnnotations> read_tsv(std::istream& in, const std::string& source) {
  std::vector<ClipAnnotations> out;
  std::unordered_map<std::string, std::size_t> where;
  std::string line;
  std::size_t n = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest = line;
    while (true) {
      const auto tab = rest.find('\t');
      cols.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    const bool header = first_row && cols.size() >= 4 && trim(cols[2]) == "start";
    first_row = false;
    if (header) continue;
    if (cols.size() != 4) {
      throw AnnotationFormatError(source, n,
                                  "expected 4 tab-separated columns, got " +
                                      std::to_string(cols.size()));
    }
    const std::string id(trim(cols[0]));
    const std::string label(trim(cols[1]));
    if (id.empty()) throw AnnotationFormatError(source, n, "empty clip id");
    if (label.empty()) throw AnnotationFormatError(source, n, "empty label");
    double start = 0.0, end = 0.0;
    if (!parse_number(cols[2], start)) throw AnnotationFormatError(source, n, "bad start time");
    if (!parse_number(cols[3], end)) throw AnnotationFormatError(source, n, "bad end time");
    const auto span = checked_span(start, end, source, n);
    auto [it, inserted] = where.emplace(id, out.size());
    if (inserted) out.push_back({id, {}});
    out[it->second].events.push_back({label, span, std::nullopt});
  }
  return out;
}

}  // namespace

std::vector<ClipAnnotations> read_annotations(std::istream& in, const std::string& source) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::istringstream body(text);
  if (first != std::string::npos && text[first] == '{') return read_jsonl(body, source);
  return read_tsv(body, source);
}

std::vector<ClipAnnotations> annotations_from_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AnnotationFormatError(path.string(), 0, "cannot open file");
  return read_annotations(in, path.string());
}

}  // namespace ctta::sed
