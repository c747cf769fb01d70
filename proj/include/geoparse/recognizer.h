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


#ifndef GEOPARSE_RECOGNIZER_H_
#define GEOPARSE_RECOGNIZER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoparse/corpus.h"
#include "geoparse/gazetteer.h"
#include "geoparse/grammar.h"
#include "json.hpp"

namespace geoparse {

// A named piece of a recognized description: the number and street of an
// address, the two roads of an intersection, the highway of an exit. Parts
// inherited from elsewhere in the tweet (the highway governing a
// "Louetta Rd. Exit") may lie outside the span.
struct SpanPart {
  std::string role;
  size_t start = 0;
  size_t end = 0;
  std::string surface;
};

struct RecognizedSpan {
  LocationSpan span;
  std::string rule_id;
  double score = 1.0;
  std::vector<SpanPart> parts;

  // First part with the role, if any.
  const SpanPart *part(std::string_view role) const;
};

struct RecognizerOptions {
  // Accept gazetteer names written entirely in lowercase.
  bool caseless = false;
};

// Rule grammar plus optional gazetteer. Immutable; Recognize may be called
// from several threads at once.
class Recognizer {
 public:
  explicit Recognizer(const GrammarRuleSet &rules, const GazetteerIndex *gazetteer = nullptr,
                      RecognizerOptions options = {});

  // Non-overlapping spans sorted by start.
  std::vector<RecognizedSpan> Recognize(std::string_view text) const;

  // Grammar matches of one category only, overlaps resolved among them.
  std::vector<RecognizedSpan> RecognizeCategory(std::string_view text, Category category) const;

  // Gazetteer-name matches only (C2, C3, C6 to C9), overlaps resolved among
  // them.
  std::vector<RecognizedSpan> MatchGazetteerNames(std::string_view text) const;

  const GrammarRuleSet &rules() const { return rules_; }
  const GazetteerIndex *gazetteer() const { return gazetteer_; }

 private:
  struct Candidate;
  struct Analysis;

  Analysis Analyze(std::string_view text) const;
  void AddGrammarCandidates(Analysis &a) const;
  void AddGazetteerCandidates(Analysis &a) const;
  std::vector<RecognizedSpan> Select(Analysis &a, std::vector<Candidate> candidates) const;

  const GrammarRuleSet &rules_;
  const GazetteerIndex *gazetteer_;
  RecognizerOptions options_;
};

std::vector<RecognizedSpan> Recognize(std::string_view text, const GrammarRuleSet &rules,
                                      const GazetteerIndex *gazetteer = nullptr);

// Single-category entry points over the bundled grammar.
std::vector<RecognizedSpan> RecognizeAddress(std::string_view text);
std::vector<RecognizedSpan> RecognizeHighway(std::string_view text);
std::vector<RecognizedSpan> RecognizeExit(std::string_view text);
std::vector<RecognizedSpan> RecognizeIntersection(std::string_view text);
std::vector<RecognizedSpan> RecognizeMultiArea(std::string_view text);
std::vector<RecognizedSpan> MatchGazetteerNames(std::string_view text, const GazetteerIndex &gazetteer,
                                                RecognizerOptions options = {});

nlohmann::json SpanToJson(const RecognizedSpan &span);
// Inverse of SpanToJson; "category" may also be given as "label". Throws
// DataError when required fields are missing or the surface disagrees with
// `text`.
RecognizedSpan SpanFromJson(const nlohmann::json &record, const std::string &text);

}  // namespace geoparse

#endif  // GEOPARSE_RECOGNIZER_H_
