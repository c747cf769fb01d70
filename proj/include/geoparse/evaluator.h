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


#ifndef GEOPARSE_EVALUATOR_H_
#define GEOPARSE_EVALUATOR_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "geoparse/category.h"
#include "geoparse/corpus.h"
#include "geoparse/errors.h"

namespace geoparse {

enum class MatchMode { kExact, kOverlap };

std::string MatchModeName(MatchMode mode);
std::optional<MatchMode> ParseMatchMode(std::string_view name);

struct PredictedSpan {
  size_t start = 0;
  size_t end = 0;
  std::optional<std::string> label;
};

struct EvalCounts {
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t fn = 0;

  EvalCounts &operator+=(const EvalCounts &o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const EvalCounts &, const EvalCounts &) = default;
};

struct SpanPair {
  size_t gold = 0;  // index into the gold list
  size_t pred = 0;  // index into the prediction list
};

struct MatchResult {
  EvalCounts counts;
  std::vector<SpanPair> pairs;
};

bool SpansMatch(size_t gold_start, size_t gold_end, size_t pred_start, size_t pred_end, MatchMode mode);

// Gold spans are taken in (start, end) order and each one claims the unused
// matching prediction that ends first. That is a maximum matching whenever
// the gold spans are pairwise disjoint, which every corpus guarantees.
MatchResult MatchSpansGreedy(const std::vector<LocationSpan> &gold, const std::vector<PredictedSpan> &pred,
                             MatchMode mode);

// Maximum one-to-one matching. Runs the greedy pass and, only when gold
// spans overlap, extends it with augmenting paths.
MatchResult MatchSpans(const std::vector<LocationSpan> &gold, const std::vector<PredictedSpan> &pred,
                       MatchMode mode);

// An exact non-negative fraction.
struct Fraction {
  uint64_t num = 0;
  uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction &, const Fraction &) = default;
};

struct MetricsReport {
  EvalCounts counts;
  // Unset when the denominator is zero. F is unset when precision or recall
  // is; with tp = 0 and both defined it is 0.
  std::optional<Fraction> precision;
  std::optional<Fraction> recall;
  std::optional<Fraction> f_score;
  MatchMode mode = MatchMode::kExact;
};

MetricsReport ComputeMetrics(const EvalCounts &counts, MatchMode mode = MatchMode::kExact);

struct CategoryAccuracy {
  Category category = Category::kC1;
  uint64_t annotated = 0;
  uint64_t recognized = 0;
  std::optional<Fraction> accuracy;  // unset when nothing is annotated
};

struct CategoryAccuracyReport {
  std::vector<CategoryAccuracy> rows;  // evaluated categories in C1..C10 order
  std::vector<Category> skipped;
  MatchMode mode = MatchMode::kExact;
};

// Categories an NER tool cannot produce as one entity.
std::set<Category> DefaultSkippedCategories();

// A gold span counts as recognized when any prediction matches it under
// `mode`; prediction labels play no part.
CategoryAccuracyReport ComputeCategoryAccuracy(const std::vector<AnnotatedTweet> &gold,
                                               const std::map<std::string, std::vector<PredictedSpan>> &pred,
                                               MatchMode mode,
                                               const std::set<Category> &skip = DefaultSkippedCategories());

// Which external labels count as location predictions. Spans without a label
// are always kept.
class LabelFilter {
 public:
  // "all", "stanford-narrow", "stanford-broad", "spacy-narrow",
  // "spacy-broad", or "labels:A,B,...". Throws DataError otherwise.
  static LabelFilter Preset(std::string_view name);
  static std::vector<std::string> PresetNames();

  bool Accepts(const std::optional<std::string> &label) const;
  const std::string &name() const { return name_; }

 private:
  std::string name_;
  std::optional<std::set<std::string>> labels_;  // uppercase; unset keeps all
};

struct PredictionFile {
  std::map<std::string, std::vector<PredictedSpan>> spans;  // by tweet id
  std::vector<RecordError> errors;
  size_t dropped_by_label = 0;
};

// Adapter format: one JSON object per line, {tweet_id, spans: [{start, end,
// label?}]}. "id" is accepted for "tweet_id" and "category" for "label", so
// recognizer output can be read directly. Unknown tweet ids, duplicate
// records and offsets outside the tweet text are record errors.
PredictionFile ReadPredictions(std::istream &in, const std::map<std::string, std::string> &texts,
                               const LabelFilter &filter);
PredictionFile LoadPredictions(const std::filesystem::path &path, const std::vector<AnnotatedTweet> &corpus,
                               const LabelFilter &filter);

struct Evaluation {
  MetricsReport metrics;
  CategoryAccuracyReport categories;
};

Evaluation EvaluateCorpus(const std::vector<AnnotatedTweet> &gold,
                          const std::map<std::string, std::vector<PredictedSpan>> &pred, MatchMode mode,
                          const std::set<Category> &skip = DefaultSkippedCategories());

}  // namespace geoparse

#endif  // GEOPARSE_EVALUATOR_H_
