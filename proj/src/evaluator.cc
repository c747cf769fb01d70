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


#include "geoparse/evaluator.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <numeric>

#include "geoparse/text.h"
#include "json.hpp"

namespace geoparse {

using nlohmann::json;

std::string MatchModeName(MatchMode mode) { return mode == MatchMode::kExact ? "exact" : "overlap"; }

std::optional<MatchMode> ParseMatchMode(std::string_view name) {
  if (name == "exact") return MatchMode::kExact;
  if (name == "overlap") return MatchMode::kOverlap;
  return std::nullopt;
}

bool SpansMatch(size_t gold_start, size_t gold_end, size_t pred_start, size_t pred_end, MatchMode mode) {
  if (mode == MatchMode::kExact) return gold_start == pred_start && gold_end == pred_end;
  return gold_start < pred_end && pred_start < gold_end;
}

MatchResult MatchSpansGreedy(const std::vector<LocationSpan> &gold, const std::vector<PredictedSpan> &pred,
                             MatchMode mode) {
  std::vector<size_t> gold_order(gold.size());
  std::iota(gold_order.begin(), gold_order.end(), 0);
  std::stable_sort(gold_order.begin(), gold_order.end(), [&](size_t a, size_t b) {
    return std::tie(gold[a].start, gold[a].end) < std::tie(gold[b].start, gold[b].end);
  });
  std::vector<size_t> pred_order(pred.size());
  std::iota(pred_order.begin(), pred_order.end(), 0);
  std::stable_sort(pred_order.begin(), pred_order.end(), [&](size_t a, size_t b) {
    return std::tie(pred[a].end, pred[a].start) < std::tie(pred[b].end, pred[b].start);
  });
  std::vector<bool> used(pred.size(), false);
  MatchResult result;
  for (size_t g : gold_order) {
    for (size_t p : pred_order) {
      if (used[p] || !SpansMatch(gold[g].start, gold[g].end, pred[p].start, pred[p].end, mode)) continue;
      used[p] = true;
      result.pairs.push_back({g, p});
      break;
    }
  }
  result.counts.tp = result.pairs.size();
  result.counts.fn = gold.size() - result.pairs.size();
  result.counts.fp = pred.size() - result.pairs.size();
  return result;
}

namespace {

bool Disjoint(const std::vector<LocationSpan> &gold) {
  std::vector<std::pair<size_t, size_t>> ranges;
  for (const LocationSpan &g : gold) ranges.emplace_back(g.start, g.end);
  std::sort(ranges.begin(), ranges.end());
  for (size_t i = 1; i < ranges.size(); ++i) {
    if (ranges[i].first < ranges[i - 1].second) return false;
  }
  return true;
}

}  // namespace

MatchResult MatchSpans(const std::vector<LocationSpan> &gold, const std::vector<PredictedSpan> &pred,
                       MatchMode mode) {
  MatchResult greedy = MatchSpansGreedy(gold, pred, mode);
  if (Disjoint(gold)) return greedy;

  // Overlapping gold spans can trap the greedy pass; grow its matching with
  // augmenting paths until none is left.
  constexpr size_t kFree = static_cast<size_t>(-1);
  std::vector<size_t> gold_of(pred.size(), kFree);
  std::vector<size_t> pred_of(gold.size(), kFree);
  for (const SpanPair &pair : greedy.pairs) {
    gold_of[pair.pred] = pair.gold;
    pred_of[pair.gold] = pair.pred;
  }
  std::vector<bool> seen;
  std::function<bool(size_t)> augment = [&](size_t g) {
    for (size_t p = 0; p < pred.size(); ++p) {
      if (seen[p] || !SpansMatch(gold[g].start, gold[g].end, pred[p].start, pred[p].end, mode)) continue;
      seen[p] = true;
      if (gold_of[p] == kFree || augment(gold_of[p])) {
        gold_of[p] = g;
        pred_of[g] = p;
        return true;
      }
    }
    return false;
  };
  for (size_t g = 0; g < gold.size(); ++g) {
    if (pred_of[g] != kFree) continue;
    seen.assign(pred.size(), false);
    augment(g);
  }
  MatchResult result;
  for (size_t g = 0; g < gold.size(); ++g) {
    if (pred_of[g] != kFree) result.pairs.push_back({g, pred_of[g]});
  }
  result.counts.tp = result.pairs.size();
  result.counts.fn = gold.size() - result.pairs.size();
  result.counts.fp = pred.size() - result.pairs.size();
  return result;
}

namespace {

std::optional<Fraction> Ratio(uint64_t num, uint64_t den) {
  if (den == 0) return std::nullopt;
  const uint64_t g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

}  // namespace

MetricsReport ComputeMetrics(const EvalCounts &counts, MatchMode mode) {
  MetricsReport r;
  r.counts = counts;
  r.mode = mode;
  r.precision = Ratio(counts.tp, counts.tp + counts.fp);
  r.recall = Ratio(counts.tp, counts.tp + counts.fn);
  if (r.precision && r.recall) {
    // Harmonic mean of tp/(tp+fp) and tp/(tp+fn) is 2tp/(2tp+fp+fn), and 0
    // when tp is 0.
    r.f_score = Ratio(2 * counts.tp, 2 * counts.tp + counts.fp + counts.fn);
  }
  return r;
}

std::set<Category> DefaultSkippedCategories() { return {Category::kC1, Category::kC5, Category::kC10}; }

CategoryAccuracyReport ComputeCategoryAccuracy(const std::vector<AnnotatedTweet> &gold,
                                               const std::map<std::string, std::vector<PredictedSpan>> &pred,
                                               MatchMode mode, const std::set<Category> &skip) {
  CategoryAccuracyReport report;
  report.mode = mode;
  std::map<Category, CategoryAccuracy> rows;
  for (Category c : kAllCategories) {
    if (skip.count(c)) {
      report.skipped.push_back(c);
    } else {
      rows[c].category = c;
    }
  }
  static const std::vector<PredictedSpan> kNone;
  for (const AnnotatedTweet &t : gold) {
    auto it = pred.find(t.tweet.id);
    const auto &p = it == pred.end() ? kNone : it->second;
    for (const LocationSpan &s : t.spans) {
      auto row = rows.find(s.category);
      if (row == rows.end()) continue;
      ++row->second.annotated;
      const bool hit = std::any_of(p.begin(), p.end(), [&](const PredictedSpan &q) {
        return SpansMatch(s.start, s.end, q.start, q.end, mode);
      });
      if (hit) ++row->second.recognized;
    }
  }
  for (auto &[c, row] : rows) {
    row.accuracy = Ratio(row.recognized, row.annotated);
    report.rows.push_back(row);
  }
  std::sort(report.rows.begin(), report.rows.end(), [](const CategoryAccuracy &a, const CategoryAccuracy &b) {
    return CategoryNumber(a.category) < CategoryNumber(b.category);
  });
  return report;
}

LabelFilter LabelFilter::Preset(std::string_view name) {
  LabelFilter f;
  f.name_ = std::string(name);
  if (name == "all") return f;
  if (name == "stanford-narrow") {
    f.labels_ = std::set<std::string>{"LOCATION"};
  } else if (name == "stanford-broad") {
    f.labels_ = std::set<std::string>{"LOCATION", "ORGANIZATION"};
  } else if (name == "spacy-narrow") {
    f.labels_ = std::set<std::string>{"LOC"};
  } else if (name == "spacy-broad") {
    f.labels_ = std::set<std::string>{"FAC", "FACILITY", "ORG", "GPE", "LOC"};
  } else if (StartsWith(name, "labels:")) {
    std::set<std::string> labels;
    for (const std::string &l : SplitString(name.substr(7), ',')) {
      const std::string t = Trim(l);
      if (t.empty()) continue;
      std::string upper;
      for (char c : t) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
      labels.insert(upper);
    }
    if (labels.empty()) throw DataError("label filter \"labels:\" lists no labels");
    f.labels_ = std::move(labels);
  } else {
    throw DataError("unknown label filter \"" + std::string(name) + "\"");
  }
  return f;
}

std::vector<std::string> LabelFilter::PresetNames() {
  return {"all", "stanford-narrow", "stanford-broad", "spacy-narrow", "spacy-broad"};
}

bool LabelFilter::Accepts(const std::optional<std::string> &label) const {
  if (!labels_ || !label) return true;
  std::string upper;
  for (char c : *label) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return labels_->count(upper) > 0;
}

PredictionFile ReadPredictions(std::istream &in, const std::map<std::string, std::string> &texts,
                               const LabelFilter &filter) {
  PredictionFile file;
  std::map<std::string, size_t> lengths;
  for (const auto &[id, text] : texts) lengths[id] = Utf8Length(text);
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    try {
      const json record = json::parse(line);
      if (!record.is_object()) throw DataError("record is not a JSON object");
      std::string id;
      if (auto it = record.find("tweet_id"); it != record.end() && it->is_string()) {
        id = it->get<std::string>();
      } else if (auto it2 = record.find("id"); it2 != record.end() && it2->is_string()) {
        id = it2->get<std::string>();
      } else {
        throw DataError("missing \"tweet_id\"");
      }
      auto len = lengths.find(id);
      if (len == lengths.end()) throw DataError("unknown tweet id \"" + id + "\"");
      if (file.spans.count(id)) throw DataError("duplicate record for tweet id \"" + id + "\"");
      auto spans_it = record.find("spans");
      if (spans_it == record.end() || !spans_it->is_array()) throw DataError("missing \"spans\" array");
      std::vector<PredictedSpan> spans;
      for (const json &s : *spans_it) {
        if (!s.is_object() || !s.contains("start") || !s.contains("end") || !s["start"].is_number_unsigned() ||
            !s["end"].is_number_unsigned()) {
          throw DataError("span needs non-negative integer start and end");
        }
        PredictedSpan p;
        p.start = s["start"].get<size_t>();
        p.end = s["end"].get<size_t>();
        if (p.start >= p.end || p.end > len->second) {
          throw DataError("offset " + std::to_string(p.start) + ".." + std::to_string(p.end) +
                          " out of bounds for tweet \"" + id + "\" of length " + std::to_string(len->second));
        }
        if (auto l = s.find("label"); l != s.end() && l->is_string()) {
          p.label = l->get<std::string>();
        } else if (auto c = s.find("category"); c != s.end() && c->is_string()) {
          p.label = c->get<std::string>();
        }
        if (!filter.Accepts(p.label)) {
          ++file.dropped_by_label;
          continue;
        }
        spans.push_back(std::move(p));
      }
      file.spans[id] = std::move(spans);
    } catch (const json::exception &e) {
      file.errors.push_back({number, std::string("invalid JSON: ") + e.what()});
    } catch (const DataError &e) {
      file.errors.push_back({number, e.what()});
    }
  }
  return file;
}

PredictionFile LoadPredictions(const std::filesystem::path &path, const std::vector<AnnotatedTweet> &corpus,
                               const LabelFilter &filter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open predictions " + path.string());
  std::map<std::string, std::string> texts;
  for (const AnnotatedTweet &t : corpus) texts[t.tweet.id] = t.tweet.text;
  return ReadPredictions(in, texts, filter);
}

Evaluation EvaluateCorpus(const std::vector<AnnotatedTweet> &gold,
                          const std::map<std::string, std::vector<PredictedSpan>> &pred, MatchMode mode,
                          const std::set<Category> &skip) {
  EvalCounts total;
  static const std::vector<PredictedSpan> kNone;
  for (const AnnotatedTweet &t : gold) {
    auto it = pred.find(t.tweet.id);
    total += MatchSpans(t.spans, it == pred.end() ? kNone : it->second, mode).counts;
  }
  Evaluation e;
  e.metrics = ComputeMetrics(total, mode);
  e.categories = ComputeCategoryAccuracy(gold, pred, mode, skip);
  return e;
}

}  // namespace geoparse
