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

#include "ctta/lex/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

namespace ctta::lex {

namespace {

std::string upper(std::string_view word) {
  std::string out(word);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// "READ(2)" -> "READ"
std::string_view strip_variant(std::string_view word) {
  if (word.size() > 3 && word.back() == ')') {
    const auto open = word.rfind('(');
    if (open != std::string_view::npos && open > 0 &&
        std::all_of(word.begin() + open + 1, word.end() - 1,
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return word.substr(0, open);
    }
  }
  return word;
}

}  // namespace

const PhonemeInventory& arpabet_inventory() {
  static const PhonemeInventory inventory = [] {
    PhonemeInventory set;
    for (const char* vowel : {"AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER",
                              "EY", "IH", "IY", "OW", "OY", "UH", "UW"}) {
      for (const char* stress : {"0", "1", "2"}) {
        set.insert(std::string(vowel) + stress);
      }
    }
    for (const char* consonant :
         {"B", "CH", "D", "DH", "F", "G", "HH", "JH", "K", "L", "M", "N",
          "NG", "P", "R", "S", "SH", "T", "TH", "V", "W", "Y", "Z", "ZH"}) {
      set.insert(consonant);
    }
    return set;
  }();
  return inventory;
}

LexiconError::LexiconError(std::size_t line, const std::string& message)
    : std::runtime_error("lexicon line " + std::to_string(line) + ": " + message),
      line_(line) {}

PhonemeLexicon::PhonemeLexicon(PhonemeInventory inventory)
    : inventory_(std::move(inventory)) {}

bool PhonemeLexicon::add(std::string_view word, std::vector<std::string> phonemes) {
  for (const std::string& p : phonemes) {
    if (!contains_phoneme(p)) {
      throw std::invalid_argument("phoneme '" + p + "' is not in the inventory");
    }
  }
  return entries_.try_emplace(upper(word), std::move(phonemes)).second;
}

const std::vector<std::string>* PhonemeLexicon::find(std::string_view word) const {
  const auto it = entries_.find(upper(word));
  return it == entries_.end() ? nullptr : &it->second;
}

PhonemeLexicon load_lexicon(std::istream& source, PhonemeInventory inventory) {
  PhonemeLexicon lexicon(std::move(inventory));
  std::string line;
  std::size_t number = 0;
  while (std::getline(source, line)) {
    ++number;
    if (line.starts_with(";;;")) continue;
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;  // blank
    std::vector<std::string> phonemes;
    for (std::string p; fields >> p;) phonemes.push_back(std::move(p));
    if (phonemes.empty()) throw LexiconError(number, "no phonemes for '" + word + "'");
    try {
      lexicon.add(strip_variant(word), std::move(phonemes));
    } catch (const std::invalid_argument& e) {
      throw LexiconError(number, e.what());
    }
  }
  return lexicon;
}

PhonemeLexicon load_lexicon_file(const std::filesystem::path& path,
                                 PhonemeInventory inventory) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon " + path.string());
  return load_lexicon(in, std::move(inventory));
}

}  // namespace ctta::lex
