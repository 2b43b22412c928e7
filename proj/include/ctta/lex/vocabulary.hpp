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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctta/dsl/prompt.hpp"
#include "ctta/lex/lexicon.hpp"

namespace ctta::lex {

using TokenId = std::uint32_t;

inline constexpr std::string_view kSpeechOpen = "<SPK>";
inline constexpr std::string_view kSpeechClose = "</SPK>";

enum class TokenGroup { kBase, kPhoneme, kBoundary };

/// A whitespace-delimited piece of text, as a byte range into the input.
struct TokenPiece {
  std::size_t offset = 0;
  std::size_t length = 0;
};

/// Splits base (non-speech) text into tokens.
class BaseTokenizer {
 public:
  virtual ~BaseTokenizer() = default;
  virtual std::vector<TokenPiece> split(std::string_view text) const = 0;
};

/// Runs of alphanumerics (with internal apostrophes) form one token; every
/// other non-space byte is a token by itself. Whitespace is dropped.
class WordTokenizer final : public BaseTokenizer {
 public:
  std::vector<TokenPiece> split(std::string_view text) const override;
};

const BaseTokenizer& default_tokenizer();

/// Base tokens, then phoneme tokens, then the two speech boundary markers.
/// Ids are dense and assigned in that order.
class ExtendedVocabulary {
 public:
  ExtendedVocabulary(std::vector<std::string> base_tokens,
                     std::vector<std::string> phoneme_tokens);

  std::optional<TokenId> base_id(std::string_view token) const;
  std::optional<TokenId> phoneme_id(std::string_view symbol) const;
  TokenId speech_open() const { return static_cast<TokenId>(base_.size() + phonemes_.size()); }
  TokenId speech_close() const { return speech_open() + 1; }

  TokenGroup group(TokenId id) const;
  const std::string& token(TokenId id) const;

  std::size_t size() const { return base_.size() + phonemes_.size() + 2; }
  const std::vector<std::string>& base_tokens() const { return base_; }
  const std::vector<std::string>& phoneme_tokens() const { return phonemes_; }

  /// `token<TAB>id` per line, in id order.
  void write_tsv(std::ostream& out) const;

 private:
  std::vector<std::string> base_;
  std::vector<std::string> phonemes_;
  std::map<std::string, TokenId, std::less<>> base_ids_;
  std::map<std::string, TokenId, std::less<>> phoneme_ids_;
};

/// Base tokens ordered by corpus frequency (descending, ties lexicographic),
/// followed by the lexicon inventory in sorted order.
ExtendedVocabulary build_vocab(std::istream& base_corpus, const PhonemeLexicon& lexicon,
                               const BaseTokenizer& tokenizer = default_tokenizer());
ExtendedVocabulary build_vocab(std::string_view base_corpus, const PhonemeLexicon& lexicon,
                               const BaseTokenizer& tokenizer = default_tokenizer());

class VocabularyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Token ids for the canonical form of a prompt. `spans` holds, per token,
/// the byte range of `source` it came from; concatenated they cover `source`
/// exactly. The opening speech marker owns the whole quoted segment, and the
/// phoneme tokens and closing marker that follow own empty ranges.
struct TokenizedPrompt {
  std::string source;
  std::vector<TokenId> tokens;
  std::vector<dsl::ByteRange> spans;
};

TokenizedPrompt tokenize_prompt(const dsl::StructuredPrompt& prompt,
                                const ExtendedVocabulary& vocab,
                                const PhonemeLexicon& lexicon,
                                OovPolicy policy = OovPolicy::kError,
                                const BaseTokenizer& tokenizer = default_tokenizer());

/// Canonical text with each quoted speech segment replaced by
/// `<SPK></SPK>`, rebuilt from the non-phoneme tokens.
std::string detokenize(const TokenizedPrompt& tokenized, const ExtendedVocabulary& vocab);

/// Text of the canonical prompt with speech segments removed; the natural
/// corpus for building a base vocabulary from prompts alone.
std::string base_text(const dsl::StructuredPrompt& prompt);

}  // namespace ctta::lex
