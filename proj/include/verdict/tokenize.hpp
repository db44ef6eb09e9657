/*
 * Copyright 2026 The verdict Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "verdict/error.hpp"

namespace verdict {

struct TokenStream {
  std::vector<std::string> tokens;
};

using StopwordSet = std::set<std::string>;

namespace detail {

// Tokenizer rule "unicode-runs-v1": tokens are maximal runs of letters,
// digits, and apostrophes; everything else separates. Letters outside ASCII
// are recognized for the common alphabetic blocks below; unlisted blocks
// (including all punctuation and symbol blocks) separate. Outer apostrophes
// are trimmed from each run. ASCII and Latin-1 letters are lowercased.
inline constexpr const char* kTokenizerRule = "unicode-runs-v1";

inline bool is_word_codepoint(std::uint32_t cp) {
  if (cp < 0x80)
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z');
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;  // Latin
  if (cp >= 0x370 && cp <= 0x3FF) return true;                     // Greek
  if (cp >= 0x400 && cp <= 0x52F) return true;                     // Cyrillic
  if (cp >= 0x590 && cp <= 0x5FF) return true;                     // Hebrew
  if (cp >= 0x600 && cp <= 0x6FF) return true;                     // Arabic
  if (cp >= 0x900 && cp <= 0x97F) return true;                     // Devanagari
  if (cp >= 0x1E00 && cp <= 0x1EFF) return true;  // Latin extended additional
  if (cp >= 0x3040 && cp <= 0x30FF) return true;  // Hiragana / Katakana
  if (cp >= 0x4E00 && cp <= 0x9FFF) return true;  // CJK unified
  if (cp >= 0xAC00 && cp <= 0xD7A3) return true;  // Hangul
  return false;
}

inline bool is_apostrophe(std::uint32_t cp) {
  return cp == 0x27 || cp == 0x2019;  // ' and right single quotation mark
}

inline std::uint32_t lower_codepoint(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1
  return cp;
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

/// Decode the next UTF-8 codepoint; malformed bytes decode as U+FFFD and
/// advance one byte, so tokenization never fails on dirty input.
inline std::uint32_t next_codepoint(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[k]));
  };
  const std::uint32_t b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  auto cont = [&](std::size_t k) {
    return k < s.size() && (static_cast<unsigned char>(s[k]) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
    const std::uint32_t cp = ((b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
    i += 2;
    return cp;
  }
  if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
    const std::uint32_t cp =
        ((b0 & 0x0F) << 12) | ((byte(i + 1) & 0x3F) << 6) | (byte(i + 2) & 0x3F);
    i += 3;
    return cp;
  }
  if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
    const std::uint32_t cp = ((b0 & 0x07) << 18) | ((byte(i + 1) & 0x3F) << 12) |
                             ((byte(i + 2) & 0x3F) << 6) | (byte(i + 3) & 0x3F);
    i += 4;
    return cp;
  }
  ++i;
  return 0xFFFD;
}

inline void trim_apostrophes(std::string& tok) {
  auto is_tick = [](char c) { return c == '\''; };
  // U+2019 was normalized to ASCII ' during the scan.
  std::size_t b = 0, e = tok.size();
  while (b < e && is_tick(tok[b])) ++b;
  while (e > b && is_tick(tok[e - 1])) --e;
  tok = tok.substr(b, e - b);
}

}  // namespace detail

/// Lowercase and split `text` into word tokens, dropping stop-words.
/// Token order is preserved; empty output is valid.
inline TokenStream tokenize(std::string_view text, const StopwordSet& stopwords) {
  TokenStream out;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    detail::trim_apostrophes(current);
    if (!current.empty() && !stopwords.count(current))
      out.tokens.push_back(current);
    current.clear();
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const std::uint32_t cp = detail::next_codepoint(text, i);
    if (detail::is_word_codepoint(cp)) {
      detail::append_utf8(current, detail::lower_codepoint(cp));
    } else if (detail::is_apostrophe(cp)) {
      current.push_back('\'');
    } else {
      flush();
    }
  }
  flush();
  return out;
}

/// One word per line; '#' comments and blank lines ignored.
inline StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::file_not_found, path);
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    std::size_t e = line.find_last_not_of(" \t");
    set.insert(line.substr(b, e - b + 1));
  }
  return set;
}

/// Built-in English stop-word list; identical to the shipped
/// data/stopwords_english.txt resource (a sync test enforces this).
inline const StopwordSet& default_stopwords() {
  static const StopwordSet set = {
      "a", "about", "above", "after", "again", "against", "all", "am", "an",
      "and", "any", "are", "aren't", "as", "at", "be", "because", "been",
      "before", "being", "below", "between", "both", "but", "by", "can",
      "cannot", "could", "couldn't", "did", "didn't", "do", "does", "doesn't",
      "doing", "don't", "down", "during", "each", "few", "for", "from",
      "further", "had", "hadn't", "has", "hasn't", "have", "haven't", "having",
      "he", "he'd", "he'll", "he's", "her", "here", "here's", "hers",
      "herself", "him", "himself", "his", "how", "how's", "i", "i'd", "i'll",
      "i'm", "i've", "if", "in", "into", "is", "isn't", "it", "it's", "its",
      "itself", "let's", "me", "more", "most", "mustn't", "my", "myself",
      "no", "nor", "not", "of", "off", "on", "once", "only", "or", "other",
      "ought", "our", "ours", "ourselves", "out", "over", "own", "same",
      "shan't", "she", "she'd", "she'll", "she's", "should", "shouldn't",
      "so", "some", "such", "than", "that", "that's", "the", "their",
      "theirs", "them", "themselves", "then", "there", "there's", "these",
      "they", "they'd", "they'll", "they're", "they've", "this", "those",
      "through", "to", "too", "under", "until", "up", "very", "was", "wasn't",
      "we", "we'd", "we'll", "we're", "we've", "were", "weren't", "what",
      "what's", "when", "when's", "where", "where's", "which", "while", "who",
      "who's", "whom", "why", "why's", "with", "won't", "would", "wouldn't",
      "you", "you'd", "you'll", "you're", "you've", "your", "yours",
      "yourself", "yourselves"};
  return set;
}

}  // namespace verdict
