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

namespace ctta::lex {

namespace {

class Builder {
 public:
  Builder(TokenizedPrompt& out, const ExtendedVocabulary& vocab,
          const BaseTokenizer& tokenizer)
      : out_(out), vocab_(vocab), tokenizer_(tokenizer) {}

  void base_text(std::size_t begin, std::size_t end) {
    const std::string_view text =
        std::string_view(out_.source).substr(begin, end - begin);
    for (const TokenPiece& piece : tokenizer_.split(text)) {
      const std::string_view token = text.substr(piece.offset, piece.length);
      const auto id = vocab_.base_id(token);
      if (!id) {
        throw VocabularyError("token '" + std::string(token) +
                              "' is not in the base vocabulary");
      }
      push(*id, begin + piece.offset + piece.length);
    }
  }

  void speech(const dsl::ByteRange& range, const std::vector<std::string>& phonemes) {
    push(vocab_.speech_open(), range.end);
    for (const std::string& p : phonemes) {
      const auto id = vocab_.phoneme_id(p);
      if (!id) throw VocabularyError("phoneme '" + p + "' is not in the vocabulary");
      push(*id, range.end);
    }
    push(vocab_.speech_close(), range.end);
  }

  void finish() {
    if (!out_.spans.empty()) out_.spans.back().end = out_.source.size();
  }

 private:
  // Each token's range starts where the previous one ended, so leading
  // whitespace is attributed to the following token.
  void push(TokenId id, std::size_t end) {
    out_.tokens.push_back(id);
    out_.spans.push_back({cursor_, end});
    cursor_ = end;
  }

  TokenizedPrompt& out_;
  const ExtendedVocabulary& vocab_;
  const BaseTokenizer& tokenizer_;
  std::size_t cursor_ = 0;
};

}  // namespace

TokenizedPrompt tokenize_prompt(const dsl::StructuredPrompt& prompt,
                                const ExtendedVocabulary& vocab,
                                const PhonemeLexicon& lexicon, OovPolicy policy,
                                const BaseTokenizer& tokenizer) {
  dsl::SerializedPrompt layout = dsl::serialize_with_layout(prompt);
  TokenizedPrompt out;
  out.source = std::move(layout.text);

  std::vector<const std::string*> transcripts;
  for (const auto& event : prompt.events) {
    if (event.speech) transcripts.push_back(&*event.speech);
  }

  Builder builder(out, vocab, tokenizer);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < layout.speech_ranges.size(); ++i) {
    const dsl::ByteRange& range = layout.speech_ranges[i];
    builder.base_text(cursor, range.begin);
    builder.speech(range, g2p(*transcripts[i], lexicon, policy));
    cursor = range.end;
  }
  builder.base_text(cursor, out.source.size());
  builder.finish();
  return out;
}

std::string detokenize(const TokenizedPrompt& tokenized, const ExtendedVocabulary& vocab) {
  std::string out;
  const std::string_view source = tokenized.source;
  for (std::size_t i = 0; i < tokenized.tokens.size(); ++i) {
    const TokenId id = tokenized.tokens[i];
    const dsl::ByteRange& range = tokenized.spans[i];
    const std::string_view slice = source.substr(range.begin, range.size());
    switch (vocab.group(id)) {
      case TokenGroup::kBase: {
        // Leading whitespace, the token, and any trailing remainder.
        const std::string& token = vocab.token(id);
        const std::size_t at = slice.find(token);
        if (at == std::string_view::npos) {
          throw VocabularyError("token " + std::to_string(id) + " does not match its source");
        }
        out.append(slice.substr(0, at));
        out.append(token);
        out.append(slice.substr(at + token.size()));
        break;
      }
      case TokenGroup::kPhoneme:
        break;
      case TokenGroup::kBoundary:
        if (id == vocab.speech_open()) {
          const std::size_t quote = slice.find('"');
          out.append(slice.substr(0, quote));
          out.append(kSpeechOpen);
        } else {
          out.append(kSpeechClose);
          out.append(slice);
        }
        break;
    }
  }
  return out;
}

std::string base_text(const dsl::StructuredPrompt& prompt) {
  const dsl::SerializedPrompt layout = dsl::serialize_with_layout(prompt);
  std::string out;
  std::size_t cursor = 0;
  for (const dsl::ByteRange& range : layout.speech_ranges) {
    out.append(layout.text, cursor, range.begin - cursor);
    cursor = range.end;
  }
  out.append(layout.text, cursor, std::string::npos);
  return out;
}

}  // namespace ctta::lex
