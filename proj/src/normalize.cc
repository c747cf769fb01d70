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

#include "geoparse/normalize.h"

#include "geoparse/errors.h"
#include "geoparse/text.h"

namespace geoparse {

void AbbreviationTable::Add(std::string_view kind, std::string_view short_form,
                            std::string_view long_form) {
  const std::string s = ToLower(short_form);
  const std::string l = ToLower(long_form);
  const std::string k(kind);
  if (s.empty() || l.empty()) throw DataError("empty abbreviation");
  if (auto it = short_to_long_.find(s); it != short_to_long_.end() && it->second != l) {
    throw DataError("abbreviation '" + s + "' maps to both '" + it->second + "' and '" + l + "'");
  }
  if (auto it = short_to_long_.find(l); it != short_to_long_.end() && it->second != l) {
    throw DataError("long form '" + l + "' is itself an abbreviation of '" + it->second + "'");
  }
  if (s != l && long_to_short_.count(s)) {
    throw DataError("abbreviation '" + s + "' is already a long form");
  }
  for (const std::string *form : {&s, &l}) {
    if (auto it = kind_.find(*form); it != kind_.end() && it->second != k) {
      throw DataError("'" + *form + "' registered under kinds '" + it->second + "' and '" + k + "'");
    }
  }
  short_to_long_[s] = l;
  long_to_short_.emplace(l, s);
  kind_[s] = k;
  kind_[l] = k;
}

std::optional<std::string> AbbreviationTable::Expand(std::string_view lower) const {
  if (auto it = short_to_long_.find(lower); it != short_to_long_.end()) return it->second;
  if (long_to_short_.count(lower)) return std::string(lower);
  return std::nullopt;
}

std::optional<std::string> AbbreviationTable::Abbreviate(std::string_view lower) const {
  if (auto it = long_to_short_.find(lower); it != long_to_short_.end()) return it->second;
  return std::nullopt;
}

std::optional<std::string> AbbreviationTable::KindOf(std::string_view lower) const {
  if (auto it = kind_.find(lower); it != kind_.end()) return it->second;
  return std::nullopt;
}

bool AbbreviationTable::IsKind(std::string_view lower, std::string_view kind) const {
  auto it = kind_.find(lower);
  return it != kind_.end() && it->second == kind;
}

bool AbbreviationTable::HasKind(std::string_view kind) const {
  for (const auto &[form, k] : kind_) {
    if (k == kind) return true;
  }
  return false;
}

std::string NormalizeToken(std::string_view token, const AbbreviationTable &table) {
  auto cps = DecodeUtf8(ToLower(token));
  while (!cps.empty() && !IsWordChar(cps.back())) cps.pop_back();
  const std::string lower = EncodeUtf8(cps);
  if (auto expanded = table.Expand(lower)) return *expanded;
  return lower;
}

namespace {

// "i45" -> {"i", "45"}; anything else unchanged.
std::vector<std::string> SplitCode(const std::string &word) {
  size_t i = 0;
  while (i < word.size() && word[i] >= 'a' && word[i] <= 'z') ++i;
  if (i == 0 || i == word.size()) return {word};
  for (size_t j = i; j < word.size(); ++j) {
    if (word[j] < '0' || word[j] > '9') return {word};
  }
  return {word.substr(0, i), word.substr(i)};
}

}  // namespace

std::vector<std::string> NormalizeNameTokens(std::string_view name,
                                             const AbbreviationTable &table) {
  std::vector<std::string> out;
  for (const Token &tok : Tokenize(name)) {
    if (!tok.is_word()) {
      if (tok.text == "&") out.push_back("and");
      continue;
    }
    for (const std::string &piece : SplitCode(ToLower(tok.text))) {
      out.push_back(NormalizeToken(piece, table));
    }
  }
  return out;
}

std::string NormalizeName(std::string_view name, const AbbreviationTable &table) {
  std::string out;
  for (const std::string &w : NormalizeNameTokens(name, table)) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

std::string StripSuffix(const std::string &normalized, const AbbreviationTable &table) {
  auto words = SplitString(normalized, ' ');
  bool stripped = false;
  while (words.size() > 1 && table.IsKind(words.back(), "suffix")) {
    words.pop_back();
    stripped = true;
  }
  if (!stripped) return {};
  std::string out;
  for (const auto &w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

}  // namespace geoparse
