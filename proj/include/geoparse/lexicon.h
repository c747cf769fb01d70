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

#ifndef GEOPARSE_LEXICON_H_
#define GEOPARSE_LEXICON_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace geoparse {

// Location-related terms used to pick candidate tweets out of a large
// stream. Terms are lowercase and unique; a term matches when it occurs in
// the lowercased text between ASCII word boundaries, so "rd" matches
// "Grant Rd" but not "rescued".
class FilterLexicon {
 public:
  // Throws DataError if the list is empty, has duplicates, or has a term
  // that is not lowercase.
  explicit FilterLexicon(std::vector<std::string> terms);

  // One term per line, '#' starts a comment.
  static FilterLexicon Parse(std::istream &in);
  // Throws IoError with "lexicon not found" when the file is missing.
  static FilterLexicon Load(const std::filesystem::path &path);
  // The bundled default list (data/default.lexicon).
  static const FilterLexicon &Builtin();

  const std::vector<std::string> &terms() const { return terms_; }

  bool Matches(std::string_view text) const;
  // First matching term, or empty.
  std::string FirstMatch(std::string_view text) const;

 private:
  std::vector<std::string> terms_;
  // Terms keyed by their leading word run; terms starting with a non-word
  // character are scanned directly.
  std::unordered_map<std::string, std::vector<size_t>> by_first_word_;
  std::vector<size_t> unanchored_;
};

// True for [a-z0-9_] after lowercasing; the boundary notion of the filter.
bool IsAsciiWordByte(char c);

}  // namespace geoparse

#endif  // GEOPARSE_LEXICON_H_
