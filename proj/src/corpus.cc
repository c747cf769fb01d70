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

#include "geoparse/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "geoparse/csv.h"
#include "geoparse/text.h"

namespace geoparse {

using nlohmann::json;

bool IsRetweet(const Tweet &tweet) {
  if (tweet.retweet_flag.has_value()) return *tweet.retweet_flag;
  return StartsWith(tweet.text, "RT @");
}

LocationSpan MakeSpan(const std::string &text, size_t start, size_t end,
                      Category category) {
  const Utf8Text utf(text);
  if (start >= end || end > utf.size()) {
    throw DataError("span [" + std::to_string(start) + ", " + std::to_string(end) +
                    ") out of range for text of length " + std::to_string(utf.size()));
  }
  return LocationSpan{start, end, category, utf.substr(start, end)};
}

std::optional<std::string> ValidateAnnotation(const AnnotatedTweet &at) {
  const Utf8Text utf(at.tweet.text);
  size_t prev_end = 0;
  for (size_t i = 0; i < at.spans.size(); ++i) {
    const LocationSpan &s = at.spans[i];
    const std::string where = "span " + std::to_string(i) + " [" +
                              std::to_string(s.start) + ", " + std::to_string(s.end) + ")";
    if (s.start >= s.end || s.end > utf.size()) return where + ": offsets out of range";
    if (utf.substr(s.start, s.end) != s.surface) return where + ": surface does not match text";
    if (IsSpace(utf.at(s.start)) || IsSpace(utf.at(s.end - 1))) {
      return where + ": starts or ends on whitespace";
    }
    if (i > 0 && s.start < prev_end) return where + ": overlaps or precedes previous span";
    prev_end = s.end;
  }
  return std::nullopt;
}

std::optional<TweetFormat> ParseTweetFormat(std::string_view name) {
  if (name == "jsonl" || name == "json") return TweetFormat::kJsonl;
  if (name == "csv") return TweetFormat::kCsv;
  return std::nullopt;
}

namespace {

std::optional<Point> MakeGeotag(std::optional<double> lon, std::optional<double> lat) {
  if (!lon && !lat) return std::nullopt;
  if (!lon || !lat) throw DataError("geotag needs both lon and lat");
  const Point p{*lon, *lat};
  if (!ValidCoordinate(p)) throw DataError("geotag out of range");
  return p;
}

std::optional<bool> ParseBool(const std::string &raw) {
  const std::string v = ToLower(Trim(raw));
  if (v.empty()) return std::nullopt;
  if (v == "true" || v == "1" || v == "yes" || v == "t") return true;
  if (v == "false" || v == "0" || v == "no" || v == "f") return false;
  throw DataError("bad boolean '" + raw + "'");
}

std::optional<double> ParseDouble(const std::string &raw) {
  const std::string v = Trim(raw);
  if (v.empty()) return std::nullopt;
  size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception &) {
    throw DataError("bad number '" + raw + "'");
  }
  if (used != v.size()) throw DataError("bad number '" + raw + "'");
  return d;
}

std::optional<double> JsonNumber(const json &record, const char *key) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw DataError(std::string("field '") + key + "' is not a number");
  return it->get<double>();
}

}  // namespace

Tweet TweetFromJson(const json &record) {
  if (!record.is_object()) throw DataError("record is not a JSON object");
  Tweet t;
  auto id = record.find("id");
  if (id == record.end() || id->is_null()) throw DataError("missing id");
  if (id->is_string()) {
    t.id = id->get<std::string>();
  } else if (id->is_number_integer()) {
    t.id = id->dump();
  } else {
    throw DataError("id must be a string or integer");
  }
  if (t.id.empty()) throw DataError("empty id");
  auto text = record.find("text");
  if (text == record.end() || !text->is_string()) throw DataError("missing text");
  t.text = text->get<std::string>();
  t.geotag = MakeGeotag(JsonNumber(record, "lon"), JsonNumber(record, "lat"));
  auto rt = record.find("is_retweet");
  if (rt != record.end() && !rt->is_null()) {
    if (!rt->is_boolean()) throw DataError("is_retweet must be a boolean");
    t.retweet_flag = rt->get<bool>();
  }
  return t;
}

json TweetToJson(const Tweet &tweet) {
  json j = {{"id", tweet.id}, {"text", tweet.text}};
  if (tweet.geotag) {
    j["lon"] = tweet.geotag->lon;
    j["lat"] = tweet.geotag->lat;
  }
  if (tweet.retweet_flag) j["is_retweet"] = *tweet.retweet_flag;
  return j;
}

void ForEachTweet(std::istream &in, TweetFormat format,
                  const std::function<void(Tweet)> &on_tweet,
                  const std::function<void(RecordError)> &on_error) {
  std::unordered_set<std::string> seen;
  auto emit = [&](Tweet t, size_t line) {
    if (!seen.insert(t.id).second) {
      on_error({line, "duplicate id '" + t.id + "'"});
      return;
    }
    on_tweet(std::move(t));
  };

  if (format == TweetFormat::kJsonl) {
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (Trim(line).empty()) continue;
      try {
        emit(TweetFromJson(json::parse(line)), lineno);
      } catch (const json::exception &e) {
        on_error({lineno, std::string("invalid JSON: ") + e.what()});
      } catch (const DataError &e) {
        on_error({lineno, e.what()});
      }
    }
    return;
  }

  CsvReader reader(in);
  auto header = reader.Next();
  if (!header) {
    if (!reader.error().empty()) on_error({reader.record_line(), reader.error()});
    return;
  }
  std::unordered_map<std::string, size_t> col;
  for (size_t i = 0; i < header->size(); ++i) col[ToLower(Trim((*header)[i]))] = i;
  if (!col.count("id") || !col.count("text")) {
    on_error({1, "CSV header must declare id and text columns"});
    return;
  }
  auto field = [&](const std::vector<std::string> &rec, const char *name) -> const std::string * {
    auto it = col.find(name);
    if (it == col.end() || it->second >= rec.size()) return nullptr;
    return &rec[it->second];
  };
  while (true) {
    auto rec = reader.Next();
    if (!rec) {
      if (!reader.error().empty()) on_error({reader.record_line(), reader.error()});
      break;
    }
    const size_t lineno = reader.record_line();
    if (rec->size() == 1 && Trim((*rec)[0]).empty()) continue;
    try {
      if (rec->size() != header->size()) {
        throw DataError("expected " + std::to_string(header->size()) + " fields, got " +
                        std::to_string(rec->size()));
      }
      Tweet t;
      t.id = Trim(*field(*rec, "id"));
      if (t.id.empty()) throw DataError("missing id");
      t.text = *field(*rec, "text");
      std::optional<double> lon, lat;
      if (const auto *v = field(*rec, "lon")) lon = ParseDouble(*v);
      if (const auto *v = field(*rec, "lat")) lat = ParseDouble(*v);
      t.geotag = MakeGeotag(lon, lat);
      if (const auto *v = field(*rec, "is_retweet")) t.retweet_flag = ParseBool(*v);
      emit(std::move(t), lineno);
    } catch (const DataError &e) {
      on_error({lineno, e.what()});
    }
  }
}

LoadResult<Tweet> ReadTweets(std::istream &in, TweetFormat format) {
  LoadResult<Tweet> result;
  ForEachTweet(
      in, format, [&](Tweet t) { result.records.push_back(std::move(t)); },
      [&](RecordError e) { result.errors.push_back(std::move(e)); });
  return result;
}

LoadResult<Tweet> LoadTweets(const std::filesystem::path &path, TweetFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read tweets from " + path.string());
  return ReadTweets(in, format);
}

std::vector<Tweet> FilterCandidates(const std::vector<Tweet> &tweets,
                                    const FilterLexicon &lexicon) {
  std::vector<Tweet> out;
  for (const Tweet &t : tweets) {
    if (lexicon.Matches(t.text)) out.push_back(t);
  }
  return out;
}

namespace {

// Unbiased draw in [0, n) from a 64-bit engine.
uint64_t Bounded(std::mt19937_64 &rng, uint64_t n) {
  const uint64_t threshold = (0 - n) % n;
  while (true) {
    const uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

}  // namespace

std::vector<Tweet> SampleRandom(const std::vector<Tweet> &tweets, size_t n,
                                uint64_t seed) {
  if (n == 0) throw DataError("sample size must be positive");
  std::vector<size_t> eligible;
  for (size_t i = 0; i < tweets.size(); ++i) {
    if (!IsRetweet(tweets[i])) eligible.push_back(i);
  }
  if (n > eligible.size()) {
    throw DataError("cannot sample " + std::to_string(n) + " tweets: only " +
                    std::to_string(eligible.size()) + " of " +
                    std::to_string(tweets.size()) + " are eligible (non-retweets)");
  }
  // Partial Fisher-Yates: the first n slots become n distinct indexes.
  std::mt19937_64 rng(seed);
  for (size_t i = 0; i < n; ++i) {
    const size_t j = i + Bounded(rng, eligible.size() - i);
    std::swap(eligible[i], eligible[j]);
  }
  std::vector<Tweet> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(tweets[eligible[i]]);
  return out;
}

}  // namespace geoparse
