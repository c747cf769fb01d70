// Copyright 2026 The Geoparse Authors.
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

#ifndef GEOPARSE_NORMALIZE_H_
#define GEOPARSE_NORMALIZE_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geoparse {

// Lowercase-keyed, bidirectional abbreviation table ("rd" <-> "road"). Each
// entry belongs to a kind ("suffix", "direction", "unit", "highway", ...)
// which doubles as a token class in grammar patterns.
class AbbreviationTable {
 public:
  // Throws DataError on conflicting entries: a short form mapped to two long
  // forms, or a long form that is itself the short form of another entry.
  void Add(std::string_view kind, std::string_view short_form,
           std::string_view long_form);

  // Long form for a short or long form; nullopt when unknown.
  std::optional<std::string> Expand(std::string_view lower) const;
  // First registered short form for a long form.
  std::optional<std::string> Abbreviate(std::string_view lower) const;
  // Kind of a short or long form.
  std::optional<std::string> KindOf(std::string_view lower) const;
  bool IsKind(std::string_view lower, std::string_view kind) const;
  bool HasKind(std::string_view kind) const;

  size_t size() const { return short_to_long_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> short_to_long_;
  std::map<std::string, std::string, std::less<>> long_to_short_;
  std::map<std::string, std::string, std::less<>> kind_;  // both forms
};

// Lowercases, strips trailing punctuation and expands abbreviations:
// "Blvd." -> "boulevard". Idempotent.
std::string NormalizeToken(std::string_view token, const AbbreviationTable &table);

// Normalized word sequence of a place name, joined by single spaces.
// Punctuation is dropped, "&" becomes "and", and letter-digit codes are
// split ("I45" -> "interstate 45") so highway spellings converge.
std::vector<std::string> NormalizeNameTokens(std::string_view name,
                                             const AbbreviationTable &table);
std::string NormalizeName(std::string_view name, const AbbreviationTable &table);

// Drops trailing street-suffix words from a normalized name
// ("cavalcade street" -> "cavalcade"). Returns empty when nothing would be
// left or there is no suffix.
std::string StripSuffix(const std::string &normalized, const AbbreviationTable &table);

}  // namespace geoparse

#endif  // GEOPARSE_NORMALIZE_H_
