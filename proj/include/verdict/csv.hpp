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

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "verdict/error.hpp"

namespace verdict::csv {

/// One RFC-4180 record. Handles quoted fields with "" escapes and embedded
/// newlines; tolerates CRLF line endings. Returns nullopt at end of input.
/// `line` is incremented past every physical line consumed.
inline std::optional<std::vector<std::string>> read_record(std::istream& in,
                                                           std::size_t& line) {
  if (in.peek() == std::char_traits<char>::eof()) return std::nullopt;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool in_quotes = false;
  ++line;
  const std::size_t start_line = line;
  for (;;) {
    int ci = in.get();
    if (ci == std::char_traits<char>::eof()) {
      if (in_quotes)
        throw Error(Errc::malformed_row,
                    "unterminated quoted field starting at line " +
                        std::to_string(start_line));
      fields.push_back(std::move(field));
      return fields;
    }
    char c = static_cast<char>(ci);
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        quoted = false;
        break;
      case '"':
        if (!field.empty() || quoted)
          throw Error(Errc::malformed_row,
                      "stray quote at line " + std::to_string(line));
        quoted = true;
        in_quotes = true;
        break;
      case '\r':
        if (in.peek() == '\n') in.get();
        fields.push_back(std::move(field));
        return fields;
      case '\n':
        fields.push_back(std::move(field));
        return fields;
      default:
        field.push_back(c);
        break;
    }
  }
}

/// Quote a field per RFC 4180 (always safe, quotes only when needed).
inline std::string quote(const std::string& field) {
  bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace verdict::csv
