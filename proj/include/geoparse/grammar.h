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


#ifndef GEOPARSE_GRAMMAR_H_
#define GEOPARSE_GRAMMAR_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "geoparse/category.h"
#include "geoparse/normalize.h"
#include "geoparse/pattern.h"

namespace geoparse {

class GrammarError : public DataError {
 public:
  using DataError::DataError;
};

struct GrammarRule {
  int priority = 0;
  Category category = Category::kC1;
  std::string id;  // "grammar:C1:950"
  Pattern pattern;
  size_t line = 0;
};

// Grammar file, one directive per line, fields separated by tabs:
//
//   abbrev   <kind>  <short>  <long>
//   class    <name>  <word> <word> ...
//   define   <name>  <pattern>
//   <priority>  <category>  <pattern>
//
// Blank lines and lines starting with '#' are ignored. Abbreviations and
// classes are collected before any pattern is compiled, so their order does
// not matter; a define is visible to the lines after it. Priorities must be
// distinct.
class GrammarRuleSet {
 public:
  GrammarRuleSet();

  static GrammarRuleSet Parse(std::string_view text);
  static GrammarRuleSet Load(const std::string &path);
  // The grammar compiled into the library.
  static const GrammarRuleSet &Builtin();

  // Sorted by descending priority.
  const std::vector<GrammarRule> &rules() const { return rules_; }
  const AbbreviationTable &abbreviations() const { return *abbreviations_; }
  std::shared_ptr<const AbbreviationTable> shared_abbreviations() const { return abbreviations_; }
  const ClassTable &classes() const { return *classes_; }

 private:
  std::vector<GrammarRule> rules_;
  std::shared_ptr<AbbreviationTable> abbreviations_;
  std::shared_ptr<ClassTable> classes_;
};

}  // namespace geoparse

#endif  // GEOPARSE_GRAMMAR_H_
