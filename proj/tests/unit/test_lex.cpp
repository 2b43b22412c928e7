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

#include <sstream>

#include <gtest/gtest.h>

#include "ctta/dsl/prompt.hpp"
#include "ctta/lex/vocabulary.hpp"
#include "ctta/pipeline/config.hpp"

namespace ctta::lex {
namespace {

const PhonemeLexicon& shipped() {
  static const PhonemeLexicon lexicon = load_lexicon_file(pipeline::default_lexicon_path());
  return lexicon;
}

using Phones = std::vector<std::string>;

TEST(Inventory, ArpabetWithStress) {
  const auto& inv = arpabet_inventory();
  EXPECT_EQ(inv.size(), 69u);
  EXPECT_TRUE(inv.contains("AH0"));
  EXPECT_TRUE(inv.contains("OW1"));
  EXPECT_TRUE(inv.contains("ZH"));
  EXPECT_FALSE(inv.contains("AH"));
  EXPECT_FALSE(inv.contains("HH1"));
}

TEST(Lexicon, ShippedDictionary) {
  EXPECT_GT(shipped().size(), 100000u);
  ASSERT_NE(shipped().find("hello"), nullptr);
  EXPECT_EQ(*shipped().find("HeLLo"), (Phones{"HH", "AH0", "L", "OW1"}));
}

TEST(Lexicon, FirstPronunciationWinsAndCommentsAreSkipped) {
  std::istringstream in(
      ";;; comment\n"
      "TOMATO  T AH0 M EY1 T OW2\n"
      "TOMATO(2)  T AH0 M AA1 T OW2\n"
      "\n"
      "IT'S  IH1 T S\n");
  const auto lex = load_lexicon(in);
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_EQ(*lex.find("tomato"), (Phones{"T", "AH0", "M", "EY1", "T", "OW2"}));
  EXPECT_EQ(*lex.find("it's"), (Phones{"IH1", "T", "S"}));
}

TEST(Lexicon, BadLinesNameTheirLine) {
  std::istringstream unknown("A  AH0\nB  QQ1\n");
  try {
    load_lexicon(unknown);
    FAIL();
  } catch (const LexiconError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream empty("WORD\n");
  EXPECT_THROW(load_lexicon(empty), LexiconError);
}

TEST(G2p, HelloExample) {
  EXPECT_EQ(g2p("hello", shipped()), (Phones{"HH", "AH0", "L", "OW1"}));
}

TEST(G2p, PunctuationAndCaseAreIgnored) {
  EXPECT_EQ(g2p("Hello, WORLD!", shipped()), g2p("hello world", shipped()));
  EXPECT_TRUE(g2p("  ... !! ", shipped()).empty());
}

TEST(G2p, OovPolicies) {
  const std::string text = "hello zqxjv";
  try {
    g2p(text, shipped());
    FAIL();
  } catch (const OovError& e) {
    EXPECT_EQ(e.word(), "zqxjv");
  }
  EXPECT_EQ(g2p(text, shipped(), OovPolicy::kSkip), (Phones{"HH", "AH0", "L", "OW1"}));
  const auto fb = g2p("zqx", shipped(), OovPolicy::kLetterFallback);
  EXPECT_EQ(fb, (Phones{"Z", "K", "K", "S"}));
  for (const auto& p : g2p("x7 qz", shipped(), OovPolicy::kLetterFallback)) {
    EXPECT_TRUE(arpabet_inventory().contains(p)) << p;
  }
  EXPECT_THROW(g2p("route 66", shipped()), OovError);
  EXPECT_THROW(parse_oov_policy("guess"), std::invalid_argument);
}

TEST(Words, ApostrophesSurvive) {
  EXPECT_EQ(transcript_words("\"It's been raining,\" she said."),
            (std::vector<std::string>{"It's", "been", "raining", "she", "said"}));
}

TEST(Tokenizer, WordsAndPunctuation) {
  const std::string text = "a dog's bark, <1.50>";
  std::vector<std::string> got;
  for (const auto& p : WordTokenizer().split(text)) got.push_back(text.substr(p.offset, p.length));
  EXPECT_EQ(got, (std::vector<std::string>{"a", "dog's", "bark", ",", "<", "1", ".", "50", ">"}));
}

class Tokenize : public ::testing::Test {
 protected:
  dsl::StructuredPrompt prompt = dsl::parse(
      R"(She is talking in the park. @{park ambient sounds. & <0.00, 10.00>} @{woman speaking & <1.50, 6.00> "Good morning!"})");
  ExtendedVocabulary vocab = build_vocab(base_text(prompt), shipped());
};

TEST_F(Tokenize, IdLayoutIsBaseThenPhonemesThenMarkers) {
  const auto nb = vocab.base_tokens().size();
  EXPECT_EQ(vocab.phoneme_tokens().size(), 69u);
  EXPECT_EQ(vocab.speech_open(), nb + 69);
  EXPECT_EQ(vocab.speech_close(), nb + 70);
  EXPECT_EQ(vocab.size(), nb + 71);
  EXPECT_EQ(vocab.group(0), TokenGroup::kBase);
  EXPECT_EQ(vocab.group(static_cast<TokenId>(nb)), TokenGroup::kPhoneme);
  EXPECT_EQ(vocab.token(vocab.speech_open()), kSpeechOpen);
  std::ostringstream tsv;
  vocab.write_tsv(tsv);
  EXPECT_EQ(tsv.str().substr(0, tsv.str().find('\n')), vocab.token(0) + "\t0");
}

TEST_F(Tokenize, SpeechBecomesPhonemesBetweenMarkers) {
  const auto t = tokenize_prompt(prompt, vocab, shipped());
  const auto open = std::find(t.tokens.begin(), t.tokens.end(), vocab.speech_open());
  const auto close = std::find(t.tokens.begin(), t.tokens.end(), vocab.speech_close());
  ASSERT_NE(open, t.tokens.end());
  ASSERT_NE(close, t.tokens.end());
  std::vector<std::string> inner;
  for (auto it = open + 1; it != close; ++it) inner.push_back(vocab.token(*it));
  auto expected = g2p("Good morning!", shipped());
  EXPECT_EQ(inner, expected);
}

TEST_F(Tokenize, SpansTileTheSource) {
  const auto t = tokenize_prompt(prompt, vocab, shipped());
  ASSERT_EQ(t.tokens.size(), t.spans.size());
  std::size_t at = 0;
  for (const auto& r : t.spans) {
    EXPECT_EQ(r.begin, at);
    EXPECT_LE(r.begin, r.end);
    at = r.end;
  }
  EXPECT_EQ(at, t.source.size());
  EXPECT_EQ(t.source, dsl::serialize(prompt));
}

TEST_F(Tokenize, DetokenizeReplacesSpeechWithMarkers) {
  const auto t = tokenize_prompt(prompt, vocab, shipped());
  EXPECT_EQ(detokenize(t, vocab),
            "She is talking in the park. @{park ambient sounds. & <0.00,10.00>} "
            "@{woman speaking & <1.50,6.00> <SPK></SPK>}");
}

TEST_F(Tokenize, UnknownBaseTokenIsAnError) {
  const auto other = dsl::parse("A cat meows. @{cat & <0,1>}");
  EXPECT_THROW(tokenize_prompt(other, vocab, shipped()), VocabularyError);
}

TEST(BuildVocab, FrequencyThenLexicographic) {
  const auto v = build_vocab(std::string_view("b a c a b a"), shipped());
  EXPECT_EQ(v.base_tokens(), (std::vector<std::string>{"a", "b", "c"}));
  const auto w = build_vocab(std::string_view("z y y x x"), shipped());
  EXPECT_EQ(w.base_tokens(), (std::vector<std::string>{"x", "y", "z"}));
}

}  // namespace
}  // namespace ctta::lex
