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

#ifndef GEOPARSE_PATTERN_H_
#define GEOPARSE_PATTERN_H_

#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "geoparse/errors.h"
#include "geoparse/normalize.h"
#include "geoparse/text.h"

namespace geoparse {

// Token-level pattern dialect used by the grammar file.
//
//   'exit'          literal token, compared case-insensitively
//   <num:1-4>       token class; see below
//   <cap&!stop>     conjunction of classes, '!' negates
//   /(i|ih)\d+/     case-insensitive regular expression over one token
//   {street}        reference to an earlier `define`
//   ( a | b )       grouping and alternation
//   x? x* x+ x{2,4} greedy repetition
//   role:x          capture the tokens matched by x under `role`
//
// Built-in classes: word, punct, num (optionally num:N or num:M-N digits),
// cap (initial capital), title (initial capital followed by a lowercase
// letter), lower (initial lowercase), upper (no lowercase letters), ord
// (26th, 1st), alnum (letters and digits). Every `class` line and every
// abbreviation kind of the grammar file also names a class; membership is
// tested on the lowercased token.

class PatternError : public DataError {
 public:
  using DataError::DataError;
};

// Precomputed per-token facts the matcher tests against.
struct TokenInfo {
  Token token;
  std::string lower;
  bool word = false;
  bool digits = false;
  bool cap = false;
  bool title = false;
  bool lower_initial = false;
  bool upper = false;
  bool ordinal = false;
  bool alnum = false;
};

std::vector<TokenInfo> AnalyzeTokens(std::vector<Token> tokens);

// Named word lists plus the abbreviation table; what class names resolve to.
struct ClassTable {
  std::map<std::string, std::set<std::string>, std::less<>> words;
  std::shared_ptr<const AbbreviationTable> abbreviations;

  bool Has(std::string_view name) const;
  bool Contains(std::string_view name, const std::string &lower) const;
};

struct Capture {
  std::string role;
  size_t begin = 0;  // token indexes, [begin, end)
  size_t end = 0;
};

struct PatternMatch {
  size_t end = 0;  // token index one past the match
  std::vector<Capture> captures;
};

struct PatternNode;

class Pattern {
 public:
  Pattern() = default;

  // `defines` are earlier named patterns that {name} may reference.
  static Pattern Parse(std::string_view source,
                       std::shared_ptr<const ClassTable> classes,
                       const std::map<std::string, Pattern, std::less<>> &defines);

  // Longest match that starts at token `start` and consumes at least one
  // token. Among equally long matches the first found (greedy, leftmost
  // alternative) wins.
  std::optional<PatternMatch> MatchAt(const std::vector<TokenInfo> &tokens,
                                      size_t start) const;

  const std::string &source() const { return source_; }

 private:
  std::shared_ptr<const PatternNode> root_;
  std::string source_;
  std::shared_ptr<const ClassTable> classes_;
};

}  // namespace geoparse

#endif  // GEOPARSE_PATTERN_H_
