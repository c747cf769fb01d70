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

#include "geoparse/lexicon.h"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "geoparse/builtin_data.h"
#include "geoparse/errors.h"
#include "geoparse/text.h"

namespace geoparse {

bool IsAsciiWordByte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

FilterLexicon::FilterLexicon(std::vector<std::string> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw DataError("lexicon has no terms");
  std::unordered_set<std::string> seen;
  for (size_t i = 0; i < terms_.size(); ++i) {
    const std::string &t = terms_[i];
    if (t.empty()) throw DataError("lexicon term is empty");
    if (ToLower(t) != t) throw DataError("lexicon term is not lowercase: " + t);
    if (!seen.insert(t).second) throw DataError("duplicate lexicon term: " + t);
    if (IsAsciiWordByte(t[0])) {
      size_t j = 0;
      while (j < t.size() && IsAsciiWordByte(t[j])) ++j;
      by_first_word_[t.substr(0, j)].push_back(i);
    } else {
      unanchored_.push_back(i);
    }
  }
}

FilterLexicon FilterLexicon::Parse(std::istream &in) {
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string term = Trim(line);
    if (!term.empty()) terms.push_back(std::move(term));
  }
  return FilterLexicon(std::move(terms));
}

FilterLexicon FilterLexicon::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("lexicon not found: " + path.string());
  return Parse(in);
}

const FilterLexicon &FilterLexicon::Builtin() {
  static const FilterLexicon lexicon = [] {
    std::istringstream in{std::string(builtin_lexicon_text())};
    return Parse(in);
  }();
  return lexicon;
}

namespace {

bool BoundaryAfter(const std::string &text, size_t end, const std::string &term) {
  if (!IsAsciiWordByte(term.back())) return true;
  return end >= text.size() || !IsAsciiWordByte(text[end]);
}

bool BoundaryBefore(const std::string &text, size_t pos, const std::string &term) {
  if (!IsAsciiWordByte(term.front())) return true;
  return pos == 0 || !IsAsciiWordByte(text[pos - 1]);
}

}  // namespace

std::string FilterLexicon::FirstMatch(std::string_view raw) const {
  const std::string text = ToLower(raw);
  size_t i = 0;
  while (i < text.size()) {
    if (!IsAsciiWordByte(text[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size() && IsAsciiWordByte(text[j])) ++j;
    // Only runs starting at a boundary can anchor a term.
    auto it = by_first_word_.find(text.substr(i, j - i));
    if (it != by_first_word_.end()) {
      for (size_t idx : it->second) {
        const std::string &t = terms_[idx];
        if (text.compare(i, t.size(), t) == 0 && BoundaryAfter(text, i + t.size(), t)) {
          return t;
        }
      }
    }
    i = j;
  }
  for (size_t idx : unanchored_) {
    const std::string &t = terms_[idx];
    for (size_t pos = text.find(t); pos != std::string::npos; pos = text.find(t, pos + 1)) {
      if (BoundaryBefore(text, pos, t) && BoundaryAfter(text, pos + t.size(), t)) return t;
    }
  }
  return {};
}

bool FilterLexicon::Matches(std::string_view text) const {
  return !FirstMatch(text).empty();
}

}  // namespace geoparse
