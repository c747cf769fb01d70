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

#include "geoparse/cli.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "geoparse/corpus.h"
#include "geoparse/evaluator.h"
#include "geoparse/gazetteer.h"
#include "geoparse/geojson.h"
#include "geoparse/grammar.h"
#include "geoparse/iob.h"
#include "geoparse/lexicon.h"
#include "geoparse/recognizer.h"
#include "geoparse/report.h"
#include "geoparse/resolver.h"
#include "geoparse/text.h"
#include "json.hpp"

namespace geoparse {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr size_t kBatchPerJob = 256;

constexpr const char *kConfigHelp =
    "Config file (--config FILE): one `key = value` per line, '#' starts a comment.\n"
    "Keys are long option names without the dashes, for example\n"
    "  gazetteer = harvey.gaz.jsonl\n"
    "  extent = -95.9,29.4,-94.9,30.2\n"
    "  jobs = 4\n"
    "A key is applied to every subcommand that has the option. Flags given on\n"
    "the command line win over the file.\n"
    "Exit status: 0 success, 1 usage, 2 invalid data, 3 I/O failure.";

// Applies `fn` to every item on up to `jobs` threads; results keep the input
// order. The first exception thrown by any call is rethrown.
template <typename T, typename F>
auto ParallelMap(const std::vector<T> &items, unsigned jobs, F fn) {
  using R = decltype(fn(items.front()));
  std::vector<std::optional<R>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < items.size(); i = next++) {
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<size_t>(jobs, items.size()));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto &t : pool) t.join();
  }
  std::vector<R> results;
  results.reserve(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    results.push_back(std::move(*slots[i]));
  }
  return results;
}

unsigned DefaultJobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string ReadFile(const std::string &path, const std::string &what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(what + " not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void RequireFile(const std::string &path, const std::string &what) {
  if (path.empty() || path == "-") return;
  if (!fs::is_regular_file(path)) throw IoError(what + " not found: " + path);
}

// Either a file opened for writing or the fallback stream.
class Output {
 public:
  Output(const std::string &path, std::ostream &fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw IoError("cannot write " + path);
    stream_ = &file_;
  }
  std::ostream &get() { return *stream_; }
  void Finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream *stream_;
};

class Input {
 public:
  Input(const std::string &path, std::istream &fallback, const std::string &what) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw IoError(what + " not found: " + path);
    stream_ = &file_;
  }
  std::istream &get() { return *stream_; }

 private:
  std::ifstream file_;
  std::istream *stream_;
};

TweetFormat RequireTweetFormat(const std::string &name) {
  auto f = ParseTweetFormat(name);
  if (!f) throw UsageError("unknown tweet format \"" + name + "\" (expected jsonl or csv)");
  return *f;
}

BoundingBox RequireExtent(const std::string &text) {
  if (text.empty()) throw UsageError("--extent is required");
  auto box = ParseExtent(text);
  if (!box) throw UsageError("--extent must be min_lon,min_lat,max_lon,max_lat, got \"" + text + "\"");
  if (box->degenerate()) throw DataError("extent has zero area: " + text);
  return *box;
}

void ReportRecordErrors(const std::string &source, const std::vector<RecordError> &errors, std::ostream &err) {
  for (const RecordError &e : errors) err << source << ": " << FormatRecordError(e) << '\n';
}

struct GazetteerArgs {
  std::string path;
  std::string extent;
  std::string cache;
};

GazetteerIndex LoadGazetteer(const GazetteerArgs &a, const BoundingBox &extent, std::ostream &err) {
  const std::string content = ReadFile(a.path, "gazetteer");
  const std::string key = IndexCacheKey(content, extent);
  if (!a.cache.empty()) {
    if (auto cached = LoadIndexCache(a.cache, key)) return std::move(*cached);
  }
  std::istringstream in(content);
  LoadResult<GazetteerEntry> loaded = IngestGazetteer(in);
  if (!loaded.errors.empty()) {
    ReportRecordErrors(a.path, loaded.errors, err);
    throw DataError(std::to_string(loaded.errors.size()) + " invalid gazetteer record(s)");
  }
  GazetteerIndex index = GazetteerIndex::Build(std::move(loaded.records), extent);
  if (!a.cache.empty()) SaveIndexCache(index, key, a.cache);
  return index;
}

void AddGazetteerOptions(CLI::App *cmd, GazetteerArgs &a, bool required) {
  auto *g = cmd->add_option("--gazetteer", a.path, "Gazetteer JSON-lines file");
  auto *e = cmd->add_option("--extent", a.extent, "Study extent min_lon,min_lat,max_lon,max_lat");
  if (required) {
    g->required();
    e->required();
  }
  cmd->add_option("--cache", a.cache, "Index cache file, rebuilt when the gazetteer or extent changes");
}

// ---------------------------------------------------------------- filter

struct FilterArgs {
  std::string input;
  std::string output;
  std::string format = "jsonl";
  std::string lexicon;
  unsigned jobs = DefaultJobs();
};

int RunFilter(const FilterArgs &a, std::istream &in, std::ostream &out, std::ostream &err) {
  const TweetFormat format = RequireTweetFormat(a.format);
  RequireFile(a.input, "input");
  const FilterLexicon lexicon = a.lexicon.empty() ? FilterLexicon::Builtin() : FilterLexicon::Load(a.lexicon);
  Input source(a.input, in, "input");
  Output sink(a.output, out);

  size_t total = 0;
  size_t kept = 0;
  std::vector<RecordError> errors;
  std::vector<Tweet> batch;
  auto flush = [&] {
    const auto keep = ParallelMap(batch, a.jobs, [&](const Tweet &t) { return lexicon.Matches(t.text); });
    for (size_t i = 0; i < batch.size(); ++i) {
      if (!keep[i]) continue;
      ++kept;
      sink.get() << TweetToJson(batch[i]).dump() << '\n';
    }
    batch.clear();
  };
  ForEachTweet(
      source.get(), format,
      [&](Tweet t) {
        ++total;
        batch.push_back(std::move(t));
        if (batch.size() >= kBatchPerJob * a.jobs) flush();
      },
      [&](RecordError e) { errors.push_back(std::move(e)); });
  flush();
  sink.Finish();

  ReportRecordErrors(a.input.empty() ? "stdin" : a.input, errors, err);
  char rate[32];
  std::snprintf(rate, sizeof rate, "%.4f", total ? static_cast<double>(kept) / static_cast<double>(total) : 0.0);
  err << "input " << total << " kept " << kept << " rate " << rate << '\n';
  return errors.empty() ? kExitOk : kExitData;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string input;
  std::string output;
  std::string format = "jsonl";
  size_t n = 0;
  uint64_t seed = 0;
};

int RunSample(const SampleArgs &a, std::istream &in, std::ostream &out, std::ostream &err) {
  const TweetFormat format = RequireTweetFormat(a.format);
  RequireFile(a.input, "input");
  if (a.n == 0) throw UsageError("-n must be positive");
  Input source(a.input, in, "input");
  LoadResult<Tweet> loaded = ReadTweets(source.get(), format);
  ReportRecordErrors(a.input.empty() ? "stdin" : a.input, loaded.errors, err);
  if (!loaded.errors.empty()) return kExitData;
  const std::vector<Tweet> sample = SampleRandom(loaded.records, a.n, a.seed);
  Output sink(a.output, out);
  for (const Tweet &t : sample) sink.get() << TweetToJson(t).dump() << '\n';
  sink.Finish();
  err << "sampled " << sample.size() << " of " << loaded.records.size() << " (seed " << a.seed << ")\n";
  return kExitOk;
}

// ------------------------------------------------------------- recognize

struct RecognizeArgs {
  std::string input;
  std::string output;
  std::string format = "jsonl";
  std::string output_format = "spans";
  std::string grammar;
  GazetteerArgs gaz;
  bool caseless = false;
  unsigned jobs = DefaultJobs();
};

json RecognitionRecord(const Tweet &t, const std::vector<RecognizedSpan> &spans) {
  json spans_json = json::array();
  for (const RecognizedSpan &s : spans) spans_json.push_back(SpanToJson(s));
  json record = {{"tweet_id", t.id}, {"text", t.text}};
  if (t.geotag) {
    record["lon"] = t.geotag->lon;
    record["lat"] = t.geotag->lat;
  }
  record["spans"] = std::move(spans_json);
  return record;
}

int RunRecognize(const RecognizeArgs &a, std::istream &in, std::ostream &out, std::ostream &err) {
  const bool iob_in = a.format == "iob";
  const TweetFormat format = iob_in ? TweetFormat::kJsonl : RequireTweetFormat(a.format);
  if (a.output_format != "spans" && a.output_format != "iob") {
    throw UsageError("unknown output format \"" + a.output_format + "\" (expected spans or iob)");
  }
  RequireFile(a.input, "input");
  RequireFile(a.grammar, "grammar");
  RequireFile(a.gaz.path, "gazetteer");

  std::optional<GrammarRuleSet> loaded_rules;
  if (!a.grammar.empty()) loaded_rules.emplace(GrammarRuleSet::Load(a.grammar));
  const GrammarRuleSet &rules = loaded_rules ? *loaded_rules : GrammarRuleSet::Builtin();
  std::optional<GazetteerIndex> gazetteer;
  if (!a.gaz.path.empty()) gazetteer.emplace(LoadGazetteer(a.gaz, RequireExtent(a.gaz.extent), err));
  const Recognizer recognizer(rules, gazetteer ? &*gazetteer : nullptr, RecognizerOptions{a.caseless});

  Input source(a.input, in, "input");
  Output sink(a.output, out);
  const bool iob_out = a.output_format == "iob";
  if (iob_out) WriteIobHeader(sink.get());

  std::map<Category, size_t> per_category;
  size_t tweets = 0;
  size_t spans = 0;
  std::vector<RecordError> errors;
  std::vector<Tweet> batch;
  auto flush = [&] {
    const auto results = ParallelMap(batch, a.jobs, [&](const Tweet &t) { return recognizer.Recognize(t.text); });
    for (size_t i = 0; i < batch.size(); ++i) {
      ++tweets;
      for (const RecognizedSpan &s : results[i]) {
        ++spans;
        ++per_category[s.span.category];
      }
      if (iob_out) {
        AnnotatedTweet at{batch[i], {}};
        for (const RecognizedSpan &s : results[i]) at.spans.push_back(s.span);
        WriteIobBlock(at, sink.get());
      } else {
        sink.get() << RecognitionRecord(batch[i], results[i]).dump() << '\n';
      }
    }
    batch.clear();
  };
  auto on_tweet = [&](Tweet t) {
    batch.push_back(std::move(t));
    if (batch.size() >= kBatchPerJob * a.jobs) flush();
  };
  if (iob_in) {
    for (AnnotatedTweet &at : ReadIob(source.get())) on_tweet(std::move(at.tweet));
  } else {
    ForEachTweet(source.get(), format, on_tweet, [&](RecordError e) { errors.push_back(std::move(e)); });
  }
  flush();
  sink.Finish();

  ReportRecordErrors(a.input.empty() ? "stdin" : a.input, errors, err);
  err << "tweets " << tweets << " spans " << spans << '\n';
  for (Category c : kAllCategories) {
    err << CategoryCode(c) << ' ' << per_category[c] << '\n';
  }
  return errors.empty() ? kExitOk : kExitData;
}

// --------------------------------------------------------------- resolve

struct ResolveArgs {
  std::string input;
  std::string output;
  GazetteerArgs gaz;
  bool strict = false;
  unsigned jobs = DefaultJobs();
};

struct SpanRecord {
  std::string tweet_id;
  std::string text;
  std::optional<Point> geotag;
  std::vector<RecognizedSpan> spans;
};

SpanRecord ParseSpanRecord(const std::string &line) {
  const json record = json::parse(line);
  if (!record.is_object()) throw DataError("record is not a JSON object");
  SpanRecord r;
  if (record.contains("tweet_id") && record["tweet_id"].is_string()) {
    r.tweet_id = record["tweet_id"].get<std::string>();
  } else if (record.contains("id") && record["id"].is_string()) {
    r.tweet_id = record["id"].get<std::string>();
  } else {
    throw DataError("missing \"tweet_id\"");
  }
  if (!record.contains("text") || !record["text"].is_string()) throw DataError("missing \"text\"");
  r.text = record["text"].get<std::string>();
  if (record.contains("lon") && record.contains("lat")) {
    const Point p{record["lon"].get<double>(), record["lat"].get<double>()};
    if (!ValidCoordinate(p)) throw DataError("geotag out of range");
    r.geotag = p;
  }
  if (!record.contains("spans") || !record["spans"].is_array()) throw DataError("missing \"spans\" array");
  for (const json &s : record["spans"]) r.spans.push_back(SpanFromJson(s, r.text));
  return r;
}

int RunResolve(const ResolveArgs &a, std::istream &in, std::ostream &out, std::ostream &err) {
  RequireFile(a.input, "input");
  RequireFile(a.gaz.path, "gazetteer");
  const BoundingBox extent = RequireExtent(a.gaz.extent);
  const GazetteerIndex gazetteer = LoadGazetteer(a.gaz, extent, err);
  const Resolver resolver(gazetteer);

  Input source(a.input, in, "input");
  Output sink(a.output, out);
  sink.get() << "{\"type\":\"FeatureCollection\",\"features\":[";
  bool first = true;
  std::map<std::string, size_t> per_method;
  std::vector<std::string> unresolved;
  std::vector<RecordError> errors;
  std::vector<SpanRecord> batch;
  auto flush = [&] {
    const auto results = ParallelMap(batch, a.jobs, [&](const SpanRecord &r) {
      return ResolveTweet(r.tweet_id, r.text, r.spans, resolver, extent, r.geotag, a.strict);
    });
    for (const TweetResolution &res : results) {
      const json collection = FeatureCollection(res);
      for (const json &f : collection["features"]) {
        sink.get() << (first ? "\n" : ",\n") << f.dump();
        first = false;
      }
      for (const ResolvedFeature &f : res.features) ++per_method[MethodName(f.location.method)];
      for (const UnresolvedSpan &u : res.unresolved) {
        unresolved.push_back(res.tweet_id + "\t" + std::to_string(u.span.span.start) + "-" +
                             std::to_string(u.span.span.end) + "\t" + u.span.span.surface + "\t" + u.kind + ": " +
                             u.reason);
      }
    }
    batch.clear();
  };
  std::string line;
  size_t number = 0;
  while (std::getline(source.get(), line)) {
    ++number;
    if (Trim(line).empty()) continue;
    try {
      batch.push_back(ParseSpanRecord(line));
    } catch (const json::exception &e) {
      errors.push_back({number, std::string("invalid JSON: ") + e.what()});
    } catch (const DataError &e) {
      errors.push_back({number, e.what()});
    }
    if (batch.size() >= kBatchPerJob * a.jobs) flush();
  }
  flush();
  sink.get() << "\n]}\n";
  sink.Finish();

  ReportRecordErrors(a.input.empty() ? "stdin" : a.input, errors, err);
  size_t resolved = 0;
  for (const auto &[method, n] : per_method) resolved += n;
  err << "resolved " << resolved << " unresolved " << unresolved.size() << '\n';
  for (const auto &[method, n] : per_method) err << method << ' ' << n << '\n';
  for (const std::string &u : unresolved) err << "unresolved\t" << u << '\n';
  return errors.empty() ? kExitOk : kExitData;
}

// -------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string gold;
  std::vector<std::string> predictions;
  std::vector<std::string> labels;
  std::vector<std::string> names;
  std::vector<std::string> systems;  // NAME:PRESET:PATH
  std::string mode = "exact";
  std::string report_format = "markdown";
  std::string skip = "C1,C5,C10";
  std::string output;
  bool lenient = false;
  bool allow_missing = false;
};

std::set<Category> ParseCategoryList(const std::string &text) {
  std::set<Category> out;
  for (const std::string &part : SplitString(text, ',')) {
    const std::string t = Trim(part);
    if (t.empty() || t == "none") continue;
    auto c = ParseCategory(t);
    if (!c) throw UsageError("unknown category \"" + t + "\"");
    out.insert(*c);
  }
  return out;
}

int RunEvaluate(const EvaluateArgs &a, std::ostream &out, std::ostream &err) {
  RequireFile(a.gold, "gold corpus");
  for (const std::string &p : a.predictions) RequireFile(p, "predictions");
  std::vector<MatchMode> modes;
  if (a.mode == "both") {
    modes = {MatchMode::kExact, MatchMode::kOverlap};
  } else if (auto m = ParseMatchMode(a.mode)) {
    modes = {*m};
  } else {
    throw UsageError("unknown mode \"" + a.mode + "\" (expected exact, overlap or both)");
  }
  auto format = ParseReportFormat(a.report_format);
  if (!format) throw UsageError("unknown report format \"" + a.report_format + "\"");
  if (!a.names.empty() && a.names.size() != a.predictions.size()) {
    throw UsageError("--name must be given once per --predictions");
  }
  const std::set<Category> skip = ParseCategoryList(a.skip);
  std::vector<LabelFilter> filters;
  for (const std::string &l : a.labels.empty() ? std::vector<std::string>{"all"} : a.labels) {
    filters.push_back(LabelFilter::Preset(l));
  }

  struct Run {
    std::string name;
    std::string path;
    LabelFilter filter;
  };
  std::vector<Run> runs;
  for (size_t i = 0; i < a.predictions.size(); ++i) {
    const std::string &path = a.predictions[i];
    std::string base = a.names.empty() ? fs::path(path).filename().string() : a.names[i];
    if (a.names.empty()) base = base.substr(0, base.find('.'));
    for (const LabelFilter &filter : filters) {
      const bool qualify = filters.size() > 1 || filter.name() != "all";
      runs.push_back({qualify ? base + " " + filter.name() : base, path, filter});
    }
  }
  for (const std::string &spec : a.systems) {
    const size_t c1 = spec.find(':');
    const size_t c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
    if (c2 == std::string::npos || c1 == 0 || c2 + 1 == spec.size()) {
      throw UsageError("--system must be NAME:PRESET:PATH, got \"" + spec + "\"");
    }
    const std::string path = spec.substr(c2 + 1);
    RequireFile(path, "predictions");
    runs.push_back({spec.substr(0, c1), path, LabelFilter::Preset(spec.substr(c1 + 1, c2 - c1 - 1))});
  }
  if (runs.empty()) throw UsageError("give --predictions or --system");

  const std::vector<AnnotatedTweet> gold = ReadIob(fs::path(a.gold), IobOptions{a.lenient});
  std::vector<SystemResult> systems;
  bool failed = false;
  for (const Run &run : runs) {
    PredictionFile pred = LoadPredictions(run.path, gold, run.filter);
    if (!pred.errors.empty()) {
      ReportRecordErrors(run.path, pred.errors, err);
      failed = true;
      continue;
    }
    std::vector<std::string> missing;
    for (const AnnotatedTweet &t : gold) {
      if (!pred.spans.count(t.tweet.id)) missing.push_back(t.tweet.id);
    }
    if (!missing.empty() && !a.allow_missing) {
      for (const std::string &id : missing) err << run.path << ": no prediction record for tweet \"" << id << "\"\n";
      failed = true;
      continue;
    }
    if (pred.dropped_by_label) {
      err << run.name << ": dropped " << pred.dropped_by_label << " span(s) by label\n";
    }
    for (MatchMode mode : modes) {
      systems.push_back({run.name, EvaluateCorpus(gold, pred.spans, mode, skip)});
    }
  }
  if (failed) return kExitData;
  Output sink(a.output, out);
  sink.get() << RenderReport(systems, *format);
  sink.Finish();
  return kExitOk;
}

// ------------------------------------------------------------- gazetteer

struct GazetteerBuildArgs {
  std::string input;
  std::string extent;
  std::string output;
};

int RunGazetteerBuild(const GazetteerBuildArgs &a, std::ostream &err) {
  RequireFile(a.input, "gazetteer");
  const BoundingBox extent = RequireExtent(a.extent);
  const std::string content = ReadFile(a.input, "gazetteer");
  std::istringstream in(content);
  LoadResult<GazetteerEntry> loaded = IngestGazetteer(in);
  if (!loaded.errors.empty()) {
    ReportRecordErrors(a.input, loaded.errors, err);
    return kExitData;
  }
  const size_t total = loaded.records.size();
  const GazetteerIndex index = GazetteerIndex::Build(std::move(loaded.records), extent);
  SaveIndexCache(index, IndexCacheKey(content, extent), a.output);
  err << "entries " << total << " indexed " << index.entries().size() << " outside extent "
      << index.excluded_count() << '\n';
  return kExitOk;
}

struct GazetteerQueryArgs {
  GazetteerArgs gaz;
  std::vector<std::string> names;
  std::string bbox;
};

int RunGazetteerQuery(const GazetteerQueryArgs &a, std::ostream &out, std::ostream &err) {
  RequireFile(a.gaz.path, "gazetteer");
  const BoundingBox extent = RequireExtent(a.gaz.extent);
  if (a.names.empty() && a.bbox.empty()) throw UsageError("give --name or --bbox");
  const GazetteerIndex index = LoadGazetteer(a.gaz, extent, err);
  static constexpr const char *kTiers[] = {"primary", "alternate", "stripped"};
  for (const std::string &name : a.names) {
    for (const GazetteerHit &hit : index.Lookup(name)) {
      json j = EntryToJson(*hit.entry);
      j["query"] = name;
      j["tier"] = kTiers[static_cast<int>(hit.tier)];
      out << j.dump() << '\n';
    }
  }
  if (!a.bbox.empty()) {
    auto box = ParseExtent(a.bbox);
    if (!box) throw UsageError("--bbox must be min_lon,min_lat,max_lon,max_lat");
    for (const GazetteerEntry *e : index.Query(*box)) out << EntryToJson(*e).dump() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- config

std::map<std::string, std::string> ReadConfig(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("config not found: " + path);
  std::map<std::string, std::string> values;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + " line " + std::to_string(number) + ": expected key = value");
    }
    std::string key = Trim(std::string_view(t).substr(0, eq));
    std::string value = Trim(std::string_view(t).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw UsageError(path + " line " + std::to_string(number) + ": empty key");
    values[key] = value;
  }
  return values;
}

// The --config path, searched before parsing so its values can be placed
// ahead of the user's own flags.
std::optional<std::string> FindConfigPath(const std::vector<std::string> &args) {
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (StartsWith(args[i], "--config=")) return args[i].substr(9);
  }
  return std::nullopt;
}

bool GivenOnCommandLine(const CLI::Option *opt, const std::vector<std::string> &args) {
  for (const std::string &a : args) {
    if (StartsWith(a, "--")) {
      const std::string name = a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2);
      if (opt->check_lname(name)) return true;
    } else if (a.size() == 2 && a[0] == '-' && opt->check_sname(a.substr(1))) {
      return true;
    }
  }
  return false;
}

// Expands config values into flags for the chosen subcommand. Keys known to
// no subcommand are a usage error.
std::vector<std::string> ApplyConfig(const std::vector<std::string> &args,
                                     const std::map<std::string, std::string> &config, CLI::App &app) {
  std::vector<CLI::App *> all;
  for (CLI::App *sub : app.get_subcommands([](CLI::App *) { return true; })) {
    all.push_back(sub);
    for (CLI::App *inner : sub->get_subcommands([](CLI::App *) { return true; })) all.push_back(inner);
  }
  for (const auto &[key, value] : config) {
    const bool known = std::any_of(all.begin(), all.end(), [&](CLI::App *s) {
      return s->get_option_no_throw("--" + key) != nullptr;
    });
    if (!known) throw UsageError("unknown config key \"" + key + "\"");
  }

  size_t insert_at = args.size();
  CLI::App *chosen = nullptr;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      ++i;
      continue;
    }
    if (StartsWith(args[i], "-")) continue;
    CLI::App *sub = app.get_subcommand_no_throw(args[i]);
    if (!sub) break;
    chosen = sub;
    insert_at = i + 1;
    if (i + 1 < args.size()) {
      if (CLI::App *inner = sub->get_subcommand_no_throw(args[i + 1])) {
        chosen = inner;
        insert_at = i + 2;
      }
    }
    break;
  }
  if (!chosen) return args;

  std::vector<std::string> injected;
  for (const auto &[key, value] : config) {
    const CLI::Option *opt = chosen->get_option_no_throw("--" + key);
    if (!opt || GivenOnCommandLine(opt, args)) continue;
    injected.push_back("--" + key + "=" + value);
  }
  std::vector<std::string> merged(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(insert_at));
  merged.insert(merged.end(), injected.begin(), injected.end());
  merged.insert(merged.end(), args.begin() + static_cast<std::ptrdiff_t>(insert_at), args.end());
  return merged;
}

}  // namespace

std::optional<BoundingBox> ParseExtent(std::string_view text) {
  const std::vector<std::string> parts = SplitString(text, ',');
  if (parts.size() != 4) return std::nullopt;
  double v[4];
  for (size_t i = 0; i < 4; ++i) {
    const std::string t = Trim(parts[i]);
    const char *begin = t.data();
    const char *end = t.data() + t.size();
    if (!t.empty() && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v[i]);
    if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(v[i])) return std::nullopt;
  }
  return BoundingBox{v[0], v[1], v[2], v[3]};
}

int RunCli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
  CLI::App app{"Geoparsing toolkit for disaster-related short messages."};
  app.name("geoparse");
  app.footer(kConfigHelp);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Flat key = value file with option defaults");

  FilterArgs filter;
  CLI::App *filter_cmd = app.add_subcommand("filter", "Keep tweets that mention a location term");
  filter_cmd->add_option("-i,--input", filter.input, "Tweets (default stdin)");
  filter_cmd->add_option("-o,--output", filter.output, "Output JSON-lines (default stdout)");
  filter_cmd->add_option("--format", filter.format, "Input format: jsonl or csv");
  filter_cmd->add_option("--lexicon", filter.lexicon, "Term list, one per line (default: bundled list)");
  filter_cmd->add_option("--jobs", filter.jobs, "Worker threads")->check(CLI::PositiveNumber);

  SampleArgs sample;
  CLI::App *sample_cmd = app.add_subcommand("sample", "Draw a reproducible random sample of non-retweets");
  sample_cmd->add_option("-i,--input", sample.input, "Tweets (default stdin)");
  sample_cmd->add_option("-o,--output", sample.output, "Output JSON-lines (default stdout)");
  sample_cmd->add_option("--format", sample.format, "Input format: jsonl or csv");
  sample_cmd->add_option("-n,--count", sample.n, "Sample size")->required();
  sample_cmd->add_option("--seed", sample.seed, "Random seed");

  RecognizeArgs recognize;
  CLI::App *recognize_cmd = app.add_subcommand("recognize", "Find location descriptions in tweets");
  recognize_cmd->add_option("-i,--input", recognize.input, "Tweets (default stdin)");
  recognize_cmd->add_option("-o,--output", recognize.output, "Output (default stdout)");
  recognize_cmd->add_option("--format", recognize.format, "Input format: jsonl, csv or iob");
  recognize_cmd->add_option("--output-format", recognize.output_format, "spans (JSON-lines) or iob");
  recognize_cmd->add_option("--grammar", recognize.grammar, "Rule file (default: bundled grammar)");
  AddGazetteerOptions(recognize_cmd, recognize.gaz, false);
  recognize_cmd->add_flag("--caseless", recognize.caseless, "Match all-lowercase gazetteer names");
  recognize_cmd->add_option("--jobs", recognize.jobs, "Worker threads")->check(CLI::PositiveNumber);

  ResolveArgs resolve;
  CLI::App *resolve_cmd = app.add_subcommand("resolve", "Turn recognized spans into GeoJSON footprints");
  resolve_cmd->add_option("-i,--input", resolve.input, "Output of recognize (default stdin)");
  resolve_cmd->add_option("-o,--output", resolve.output, "GeoJSON FeatureCollection (default stdout)");
  AddGazetteerOptions(resolve_cmd, resolve.gaz, true);
  resolve_cmd->add_flag("--strict", resolve.strict, "Report ties instead of breaking them by id");
  resolve_cmd->add_option("--jobs", resolve.jobs, "Worker threads")->check(CLI::PositiveNumber);

  EvaluateArgs evaluate;
  CLI::App *evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against a gold IOB corpus");
  evaluate_cmd->add_option("--gold", evaluate.gold, "Gold IOB corpus")->required();
  evaluate_cmd->add_option("--predictions", evaluate.predictions, "Prediction JSON-lines file (repeatable)")
      ->take_all();
  evaluate_cmd
      ->add_option("--system", evaluate.systems,
                   "NAME:PRESET:PATH, one report row with its own label filter (repeatable)")
      ->take_all();
  evaluate_cmd->add_option("--name", evaluate.names, "System name per --predictions (default: file stem)")
      ->take_all();
  evaluate_cmd
      ->add_option("--labels", evaluate.labels,
                   "Label filter (repeatable): all, stanford-narrow, stanford-broad, spacy-narrow, spacy-broad, "
                   "labels:A,B")
      ->take_all();
  evaluate_cmd->add_option("--mode", evaluate.mode, "Span matching: exact, overlap or both");
  evaluate_cmd->add_option("--report-format", evaluate.report_format, "markdown, json or csv");
  evaluate_cmd->add_option("--skip", evaluate.skip, "Categories left out of per-category accuracy ('none' for all)");
  evaluate_cmd->add_option("-o,--output", evaluate.output, "Report file (default stdout)");
  evaluate_cmd->add_flag("--lenient", evaluate.lenient, "Repair orphan I- tags in the gold corpus");
  evaluate_cmd->add_flag("--allow-missing", evaluate.allow_missing,
                         "Treat gold tweets without a prediction record as having no predictions");

  CLI::App *gazetteer_cmd = app.add_subcommand("gazetteer", "Build or query a local gazetteer");
  gazetteer_cmd->require_subcommand(1);
  GazetteerBuildArgs build;
  CLI::App *build_cmd = gazetteer_cmd->add_subcommand("build", "Index a gazetteer for an extent and save it");
  build_cmd->add_option("-i,--input", build.input, "Gazetteer JSON-lines file")->required();
  build_cmd->add_option("--extent", build.extent, "Study extent min_lon,min_lat,max_lon,max_lat")->required();
  build_cmd->add_option("-o,--output", build.output, "Index cache file")->required();
  GazetteerQueryArgs query;
  CLI::App *query_cmd = gazetteer_cmd->add_subcommand("query", "Look up names or a box");
  AddGazetteerOptions(query_cmd, query.gaz, true);
  query_cmd->add_option("--name", query.names, "Name to look up (repeatable)")->take_all();
  query_cmd->add_option("--bbox", query.bbox, "Box min_lon,min_lat,max_lon,max_lat");

  try {
    std::vector<std::string> argv = args;
    if (auto path = FindConfigPath(args)) argv = ApplyConfig(args, ReadConfig(*path), app);
    std::reverse(argv.begin(), argv.end());
    try {
      app.parse(std::move(argv));
    } catch (const CLI::ParseError &e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    if (filter_cmd->parsed()) return RunFilter(filter, in, out, err);
    if (sample_cmd->parsed()) return RunSample(sample, in, out, err);
    if (recognize_cmd->parsed()) return RunRecognize(recognize, in, out, err);
    if (resolve_cmd->parsed()) return RunResolve(resolve, in, out, err);
    if (evaluate_cmd->parsed()) return RunEvaluate(evaluate, out, err);
    if (build_cmd->parsed()) return RunGazetteerBuild(build, err);
    if (query_cmd->parsed()) return RunGazetteerQuery(query, out, err);
    return kExitUsage;
  } catch (const UsageError &e) {
    err << "geoparse: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError &e) {
    err << "geoparse: " << e.what() << '\n';
    return kExitIo;
  } catch (const DataError &e) {
    err << "geoparse: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception &e) {
    err << "geoparse: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace geoparse
