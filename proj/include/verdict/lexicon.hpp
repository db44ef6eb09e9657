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

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "verdict/error.hpp"
#include "verdict/tokenize.hpp"

namespace verdict {

/// A match pattern: a literal word, or a stem wildcard such as "caus*"
/// (wildcard allowed only in terminal position).
struct LexiconPattern {
  std::string stem;
  bool wildcard = false;

  bool matches(const std::string& token) const {
    if (!wildcard) return token == stem;
    return token.size() >= stem.size() &&
           token.compare(0, stem.size(), stem) == 0;
  }
};

/// Word-category lexicon. Categories are not assumed disjoint: one token
/// may count toward several categories.
class Lexicon {
 public:
  void add_category(const std::string& name,
                    const std::vector<std::string>& raw_patterns) {
    if (name.empty())
      throw Error(Errc::malformed_lexicon, "empty category name");
    if (categories_.count(name))
      throw Error(Errc::duplicate_category, name);
    if (raw_patterns.empty())
      throw Error(Errc::malformed_lexicon,
                  "category [" + name + "] has no patterns");
    std::vector<LexiconPattern> parsed;
    parsed.reserve(raw_patterns.size());
    for (const auto& raw : raw_patterns) {
      if (raw.empty())
        throw Error(Errc::malformed_lexicon,
                    "empty pattern in category [" + name + "]");
      LexiconPattern p;
      const auto star = raw.find('*');
      if (star == std::string::npos) {
        p.stem = raw;
      } else if (star == raw.size() - 1 && raw.size() > 1) {
        p.stem = raw.substr(0, star);
        p.wildcard = true;
      } else {
        throw Error(Errc::malformed_lexicon,
                    "wildcard must be terminal in pattern \"" + raw + "\"");
      }
      p.stem = detail_lower(p.stem);
      parsed.push_back(std::move(p));
    }
    order_.push_back(name);
    categories_[name] = std::move(parsed);
  }

  const std::vector<std::string>& category_names() const { return order_; }
  bool has_category(const std::string& name) const {
    return categories_.count(name) > 0;
  }
  const std::vector<LexiconPattern>& patterns(const std::string& name) const {
    auto it = categories_.find(name);
    if (it == categories_.end())
      throw Error(Errc::malformed_lexicon, "no such category: " + name);
    return it->second;
  }

  std::size_t matches_in(const std::string& name,
                         const TokenStream& tokens) const {
    const auto& pats = patterns(name);
    std::size_t count = 0;
    for (const auto& tok : tokens.tokens)
      for (const auto& p : pats)
        if (p.matches(tok)) {
          ++count;
          break;  // a token counts once per category
        }
    return count;
  }

 private:
  static std::string detail_lower(std::string s) {
    for (char& c : s)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  std::map<std::string, std::vector<LexiconPattern>> categories_;
  std::vector<std::string> order_;  // declaration order, for stable reports
};

namespace detail {

inline Lexicon parse_lexicon_stream(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t lineno = 0;
  std::string current;
  std::vector<std::string> patterns;
  auto flush = [&] {
    if (current.empty()) return;
    lex.add_category(current, patterns);
    current.clear();
    patterns.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw Error(Errc::malformed_lexicon,
                    "line " + std::to_string(lineno) + ": unterminated section");
      flush();
      current = trim(t.substr(1, t.size() - 2));
      if (current.empty())
        throw Error(Errc::malformed_lexicon,
                    "line " + std::to_string(lineno) + ": empty category name");
      continue;
    }
    if (current.empty())
      throw Error(Errc::malformed_lexicon,
                  "line " + std::to_string(lineno) + ": patterns before any [category]");
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string word = trim(item);
      if (word.empty())
        throw Error(Errc::malformed_lexicon,
                    "line " + std::to_string(lineno) + ": empty pattern");
      patterns.push_back(word);
    }
  }
  flush();
  return lex;
}

}  // namespace detail

/// Parse a lexicon file: TOML-like [Category] sections followed by
/// comma-separated patterns.
inline Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::file_not_found, path);
  return detail::parse_lexicon_stream(in);
}

inline Lexicon parse_lexicon(const std::string& text) {
  std::istringstream in(text);
  return detail::parse_lexicon_stream(in);
}

/// Built-in four-category lexicon; identical to the shipped
/// data/lexicon_default.toml resource (a sync test enforces this).
inline const Lexicon& default_lexicon() {
  static const Lexicon lex = [] {
    Lexicon l;
    l.add_category("Causation", {"because", "therefore", "implies", "yields"});
    l.add_category("Differentiation", {"but", "however", "except", "should"});
    l.add_category("Tentativeness", {"might", "could", "possibly"});
    l.add_category("Insight", {"think", "realize", "know", "believe", "understand"});
    return l;
  }();
  return lex;
}

}  // namespace verdict
