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


#include "geoparse/grammar.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "geoparse/builtin_data.h"

namespace geoparse {

namespace {

[[noreturn]] void Fail(size_t line, const std::string &message) {
  throw GrammarError("grammar line " + std::to_string(line) + ": " + message);
}

struct Line {
  size_t number;
  std::vector<std::string> fields;
};

std::optional<int> ParsePriority(const std::string &s) {
  int value = 0;
  const char *end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

GrammarRuleSet::GrammarRuleSet()
    : abbreviations_(std::make_shared<AbbreviationTable>()),
      classes_(std::make_shared<ClassTable>()) {
  classes_->abbreviations = abbreviations_;
}

GrammarRuleSet GrammarRuleSet::Parse(std::string_view text) {
  std::vector<Line> lines;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const std::string trimmed = Trim(raw);
      if (trimmed.empty() || trimmed[0] == '#') continue;
      std::vector<std::string> fields;
      for (const std::string &f : SplitString(raw, '\t')) {
        std::string t = Trim(f);
        if (!t.empty()) fields.push_back(std::move(t));
      }
      lines.push_back({number, std::move(fields)});
    }
  }

  GrammarRuleSet set;
  for (const Line &line : lines) {
    const auto &f = line.fields;
    if (f[0] == "abbrev") {
      if (f.size() != 4) Fail(line.number, "abbrev needs kind, short and long form");
      try {
        set.abbreviations_->Add(f[1], f[2], f[3]);
      } catch (const DataError &e) {
        Fail(line.number, e.what());
      }
    } else if (f[0] == "class") {
      if (f.size() < 3) Fail(line.number, "class needs a name and at least one word");
      auto &words = set.classes_->words[f[1]];
      for (size_t i = 2; i < f.size(); ++i) {
        for (const std::string &w : SplitString(f[i], ' ')) {
          if (!w.empty()) words.insert(ToLower(w));
        }
      }
    }
  }

  std::map<std::string, Pattern, std::less<>> defines;
  std::set<int> priorities;
  for (const Line &line : lines) {
    const auto &f = line.fields;
    if (f[0] == "abbrev" || f[0] == "class") continue;
    if (f[0] == "define") {
      if (f.size() != 3) Fail(line.number, "define needs a name and a pattern");
      if (defines.count(f[1])) Fail(line.number, "'" + f[1] + "' defined twice");
      try {
        defines[f[1]] = Pattern::Parse(f[2], set.classes_, defines);
      } catch (const DataError &e) {
        Fail(line.number, e.what());
      }
      continue;
    }
    const auto priority = ParsePriority(f[0]);
    if (!priority) Fail(line.number, "unknown directive '" + f[0] + "'");
    if (f.size() != 3) Fail(line.number, "rule needs priority, category and pattern");
    const auto category = ParseCategory(f[1]);
    if (!category) Fail(line.number, "unknown category '" + f[1] + "'");
    if (!priorities.insert(*priority).second) {
      Fail(line.number, "priority " + f[0] + " used twice");
    }
    GrammarRule rule;
    rule.priority = *priority;
    rule.category = *category;
    rule.id = "grammar:" + CategoryCode(*category) + ":" + std::to_string(*priority);
    rule.line = line.number;
    try {
      rule.pattern = Pattern::Parse(f[2], set.classes_, defines);
    } catch (const DataError &e) {
      Fail(line.number, e.what());
    }
    set.rules_.push_back(std::move(rule));
  }
  std::sort(set.rules_.begin(), set.rules_.end(),
            [](const GrammarRule &a, const GrammarRule &b) { return a.priority > b.priority; });
  return set;
}

GrammarRuleSet GrammarRuleSet::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("grammar not found: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

const GrammarRuleSet &GrammarRuleSet::Builtin() {
  static const GrammarRuleSet set = Parse(builtin_grammar_text());
  return set;
}

}  // namespace geoparse
