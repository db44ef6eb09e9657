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

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace verdict {

/// Closed set of teacher talk-move constructs plus None, with an Other
/// escape hatch for foreign corpora. Parsing is strict: only the canonical
/// spellings below map to the closed set, every other string becomes
/// Other(raw) so that parse/serialize round-trips exactly.
class ConstructLabel {
 public:
  enum class Kind {
    KeepingEveryoneTogether,
    GettingStudentsToRelate,
    Restating,
    PressingForAccuracy,
    Revoicing,
    PressingForReasoning,
    None,
    Other,
  };

  ConstructLabel() : kind_(Kind::None) {}
  explicit ConstructLabel(Kind k) : kind_(k) {}

  static ConstructLabel other(std::string raw) {
    ConstructLabel c(Kind::Other);
    c.other_ = std::move(raw);
    return c;
  }

  /// Strict parse; unknown spellings yield Other(raw).
  static ConstructLabel parse(std::string_view s) {
    for (std::size_t i = 0; i < kCanonical.size(); ++i) {
      if (s == kCanonical[i]) return ConstructLabel(static_cast<Kind>(i));
    }
    return other(std::string(s));
  }

  /// Parse that rejects unknown spellings instead of producing Other.
  static std::optional<ConstructLabel> parse_known(std::string_view s) {
    ConstructLabel c = parse(s);
    if (c.kind_ == Kind::Other) return std::nullopt;
    return c;
  }

  std::string str() const {
    if (kind_ == Kind::Other) return other_;
    return std::string(kCanonical[static_cast<std::size_t>(kind_)]);
  }

  Kind kind() const { return kind_; }
  bool is_other() const { return kind_ == Kind::Other; }

  friend bool operator==(const ConstructLabel& a, const ConstructLabel& b) {
    return a.kind_ == b.kind_ && a.other_ == b.other_;
  }
  friend std::strong_ordering operator<=>(const ConstructLabel& a,
                                          const ConstructLabel& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    return a.other_ <=> b.other_;
  }

 private:
  static constexpr std::array<std::string_view, 7> kCanonical = {
      "KeepingEveryoneTogether", "GettingStudentsToRelate", "Restating",
      "PressingForAccuracy",     "Revoicing",               "PressingForReasoning",
      "None"};

  Kind kind_;
  std::string other_;
};

}  // namespace verdict
