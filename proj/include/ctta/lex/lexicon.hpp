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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ctta::lex {

using PhonemeInventory = std::set<std::string, std::less<>>;

/// The 39-phoneme ARPAbet set with stress digits 0-2 on the 15 vowels
/// (69 symbols), as used by CMU-format pronouncing dictionaries.
const PhonemeInventory& arpabet_inventory();

class LexiconError : public std::runtime_error {
 public:
  LexiconError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Uppercase word -> phoneme sequence. Lookups ignore case.
class PhonemeLexicon {
 public:
  explicit PhonemeLexicon(PhonemeInventory inventory = arpabet_inventory());

  /// Adds an entry unless the word is already present (first pronunciation
  /// wins). Throws std::invalid_argument for phonemes outside the inventory.
  bool add(std::string_view word, std::vector<std::string> phonemes);

  const std::vector<std::string>* find(std::string_view word) const;

  const PhonemeInventory& inventory() const { return inventory_; }
  bool contains_phoneme(std::string_view symbol) const {
    return inventory_.find(symbol) != inventory_.end();
  }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  PhonemeInventory inventory_;
  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

/// Reads CMU-dictionary lines (`WORD  PH1 PH2 ...`, `;;;` comments). Variant
/// markers such as `WORD(2)` are folded into the base word, so only the first
/// pronunciation survives.
PhonemeLexicon load_lexicon(std::istream& source,
                            PhonemeInventory inventory = arpabet_inventory());
PhonemeLexicon load_lexicon_file(const std::filesystem::path& path,
                                 PhonemeInventory inventory = arpabet_inventory());

enum class OovPolicy { kError, kSkip, kLetterFallback };

OovPolicy parse_oov_policy(std::string_view name);
std::string_view to_string(OovPolicy policy);

class OovError : public std::runtime_error {
 public:
  explicit OovError(std::string word);
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

/// Whitespace-separated words with leading and trailing non-alphanumeric
/// bytes removed. Internal apostrophes survive ("it's"). Bytes >= 0x80 count
/// as alphanumeric so UTF-8 words are not split.
std::vector<std::string> transcript_words(std::string_view text);

/// Fixed phonics table used by the letter fallback policy.
const std::vector<std::string>& letter_phonemes(char letter);

std::vector<std::string> g2p(std::string_view text, const PhonemeLexicon& lexicon,
                             OovPolicy policy = OovPolicy::kError);

}  // namespace ctta::lex
