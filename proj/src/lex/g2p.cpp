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
#include <array>
#include <cctype>

#include "ctta/lex/lexicon.hpp"

namespace ctta::lex {

namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

OovPolicy parse_oov_policy(std::string_view name) {
  if (name == "error") return OovPolicy::kError;
  if (name == "skip") return OovPolicy::kSkip;
  if (name == "letter_fallback") return OovPolicy::kLetterFallback;
  throw std::invalid_argument("unknown OOV policy '" + std::string(name) +
                              "' (expected error, skip or letter_fallback)");
}

std::string_view to_string(OovPolicy policy) {
  switch (policy) {
    case OovPolicy::kError: return "error";
    case OovPolicy::kSkip: return "skip";
    case OovPolicy::kLetterFallback: return "letter_fallback";
  }
  return "error";
}

OovError::OovError(std::string word)
    : std::runtime_error("word not in lexicon: '" + word + "'"), word_(std::move(word)) {}

std::vector<std::string> transcript_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view token = text.substr(i, j - i);
    while (!token.empty() && !is_word_byte(token.front())) token.remove_prefix(1);
    while (!token.empty() && !is_word_byte(token.back())) token.remove_suffix(1);
    if (!token.empty()) words.emplace_back(token);
    i = j;
  }
  return words;
}

const std::vector<std::string>& letter_phonemes(char letter) {
  static const std::array<std::vector<std::string>, 26> table = {{
      {"AE1"}, {"B"}, {"K"}, {"D"}, {"EH1"}, {"F"}, {"G"}, {"HH"}, {"IH1"},
      {"JH"}, {"K"}, {"L"}, {"M"}, {"N"}, {"AA1"}, {"P"}, {"K"}, {"R"},
      {"S"}, {"T"}, {"AH1"}, {"V"}, {"W"}, {"K", "S"}, {"Y"}, {"Z"},
  }};
  static const std::vector<std::string> none;
  const int c = std::toupper(static_cast<unsigned char>(letter));
  if (c < 'A' || c > 'Z') return none;
  return table[static_cast<std::size_t>(c - 'A')];
}

std::vector<std::string> g2p(std::string_view text, const PhonemeLexicon& lexicon,
                             OovPolicy policy) {
  std::vector<std::string> out;
  for (const std::string& word : transcript_words(text)) {
    const bool has_digit = std::any_of(word.begin(), word.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
    // Transcripts are expected to be verbalized already.
    if (policy == OovPolicy::kError && has_digit) throw OovError(word);
    if (const auto* phonemes = lexicon.find(word)) {
      out.insert(out.end(), phonemes->begin(), phonemes->end());
      continue;
    }
    switch (policy) {
      case OovPolicy::kError:
        throw OovError(word);
      case OovPolicy::kSkip:
        break;
      case OovPolicy::kLetterFallback:
        for (const char c : word) {
          for (const std::string& p : letter_phonemes(c)) {
            if (!lexicon.contains_phoneme(p)) throw OovError(word);
            out.push_back(p);
          }
        }
        break;
    }
  }
  return out;
}

}  // namespace ctta::lex
