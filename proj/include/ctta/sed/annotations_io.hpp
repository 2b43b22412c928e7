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
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctta/sed/metrics.hpp"

namespace ctta::sed {

/// A malformed annotation row; line() is 1-based, 0 for file-level errors.
class AnnotationFormatError : public std::runtime_error {
 public:
  AnnotationFormatError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads either a JSONL scene manifest (records with "id" and "events") or a
/// TSV of clip_id, label, start, end with an optional header row. The format
/// is chosen by the first non-blank character: '{' means JSONL. Spans must
/// satisfy 0 <= start <= end <= 10 s. In TSV, rows of one clip may be
/// scattered; in JSONL a repeated id is an error.
std::vector<ClipAnnotations> annotations_from_manifest(const std::filesystem::path& path);
std::vector<ClipAnnotations> read_annotations(std::istream& in, const std::string& source);

}  // namespace ctta::sed
