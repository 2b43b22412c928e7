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

#include "ctta/lex/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace ctta::lex {

namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

std::vector<TokenPiece> WordTokenizer::split(std::string_view text) const {
  std::vector<TokenPiece> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (!is_word_byte(c)) {
      pieces.push_back({i, 1});
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size()) {
      const auto d = static_cast<unsigned char>(text[j]);
      if (is_word_byte(d)) {
        ++j;
      } else if (d == '\'' && j + 1 < text.size() &&
                 is_word_byte(static_cast<unsigned char>(text[j + 1]))) {
        j += 2;
      } else {
        break;
      }
    }
    pieces.push_back({i, j - i});
    i = j;
  }
  return pieces;
}

const BaseTokenizer& default_tokenizer() {
  static const WordTokenizer tokenizer;
  return tokenizer;
}

ExtendedVocabulary::ExtendedVocabulary(std::vector<std::string> base_tokens,
                                       std::vector<std::string> phoneme_tokens)
    : base_(std::move(base_tokens)), phonemes_(std::move(phoneme_tokens)) {
  for (std::size_t i = 0; i < base_.size(); ++i) {
    if (!base_ids_.emplace(base_[i], static_cast<TokenId>(i)).second) {
      throw std::invalid_argument("duplicate base token '" + base_[i] + "'");
    }
  }
  for (std::size_t i = 0; i < phonemes_.size(); ++i) {
    const auto id = static_cast<TokenId>(base_.size() + i);
    if (!phoneme_ids_.emplace(phonemes_[i], id).second) {
      throw std::invalid_argument("duplicate phoneme token '" + phonemes_[i] + "'");
    }
  }
}

std::optional<TokenId> ExtendedVocabulary::base_id(std::string_view token) const {
  const auto it = base_ids_.find(token);
  if (it == base_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<TokenId> ExtendedVocabulary::phoneme_id(std::string_view symbol) const {
  const auto it = phoneme_ids_.find(symbol);
  if (it == phoneme_ids_.end()) return std::nullopt;
  return it->second;
}

TokenGroup ExtendedVocabulary::group(TokenId id) const {
  if (id < base_.size()) return TokenGroup::kBase;
  if (id < base_.size() + phonemes_.size()) return TokenGroup::kPhoneme;
  if (id < size()) return TokenGroup::kBoundary;
  throw std::out_of_range("token id " + std::to_string(id) + " out of range");
}

const std::string& ExtendedVocabulary::token(TokenId id) const {
  static const std::string open(kSpeechOpen), close(kSpeechClose);
  switch (group(id)) {
    case TokenGroup::kBase: return base_[id];
    case TokenGroup::kPhoneme: return phonemes_[id - base_.size()];
    case TokenGroup::kBoundary: return id == speech_open() ? open : close;
  }
  return close;
}

void ExtendedVocabulary::write_tsv(std::ostream& out) const {
  for (TokenId id = 0; id < size(); ++id) out << token(id) << '\t' << id << '\n';
}

ExtendedVocabulary build_vocab(std::istream& base_corpus, const PhonemeLexicon& lexicon,
                               const BaseTokenizer& tokenizer) {
  std::map<std::string, std::size_t, std::less<>> counts;
  std::string line;
  while (std::getline(base_corpus, line)) {
    for (const TokenPiece& piece : tokenizer.split(line)) {
      ++counts[line.substr(piece.offset, piece.length)];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> base;
  base.reserve(ranked.size());
  for (auto& [token, count] : ranked) base.push_back(std::move(token));
  std::vector<std::string> phonemes(lexicon.inventory().begin(), lexicon.inventory().end());
  return ExtendedVocabulary(std::move(base), std::move(phonemes));
}

ExtendedVocabulary build_vocab(std::string_view base_corpus, const PhonemeLexicon& lexicon,
                               const BaseTokenizer& tokenizer) {
  std::istringstream in{std::string(base_corpus)};
  return build_vocab(in, lexicon, tokenizer);
}

}  // namespace ctta::lex
