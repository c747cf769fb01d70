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

#ifndef GEOPARSE_CORPUS_H_
#define GEOPARSE_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoparse/category.h"
#include "geoparse/errors.h"
#include "geoparse/geometry.h"
#include "geoparse/lexicon.h"
#include "json.hpp"

namespace geoparse {

struct Tweet {
  std::string id;
  std::string text;
  std::optional<Point> geotag;
  // Explicit retweet flag from the source record, when it had one.
  std::optional<bool> retweet_flag;
};

// Uses the explicit flag when present, otherwise an "RT @" text prefix.
bool IsRetweet(const Tweet &tweet);

// A categorized character range of a tweet. Offsets are code points;
// `surface` is always the text in [start, end).
struct LocationSpan {
  size_t start = 0;
  size_t end = 0;
  Category category = Category::kC1;
  std::string surface;

  friend bool operator==(const LocationSpan &, const LocationSpan &) = default;
};

struct AnnotatedTweet {
  Tweet tweet;
  std::vector<LocationSpan> spans;  // sorted by start, non-overlapping
};

// Builds a span over `text`, filling in the surface. Throws DataError when
// the offsets are out of range.
LocationSpan MakeSpan(const std::string &text, size_t start, size_t end,
                      Category category);

// Checks the annotation invariants: offsets in range, surfaces equal to the
// text, spans sorted and non-overlapping, span edges on non-space characters.
// Returns the first violation.
std::optional<std::string> ValidateAnnotation(const AnnotatedTweet &tweet);

enum class TweetFormat { kJsonl, kCsv };

std::optional<TweetFormat> ParseTweetFormat(std::string_view name);

// Streams tweets from a JSON-lines or CSV source. Bad records go to
// `on_error` and reading continues. Duplicate ids are reported as errors.
void ForEachTweet(std::istream &in, TweetFormat format,
                  const std::function<void(Tweet)> &on_tweet,
                  const std::function<void(RecordError)> &on_error);

LoadResult<Tweet> ReadTweets(std::istream &in, TweetFormat format);
// Throws IoError when the file cannot be opened.
LoadResult<Tweet> LoadTweets(const std::filesystem::path &path,
                             TweetFormat format);

// Parses one JSON tweet object ({id, text, lon?, lat?, is_retweet?}).
// Throws DataError naming the problem.
Tweet TweetFromJson(const nlohmann::json &record);
nlohmann::json TweetToJson(const Tweet &tweet);

// Keeps the tweets whose text mentions at least one lexicon term. Output
// order follows input order.
std::vector<Tweet> FilterCandidates(const std::vector<Tweet> &tweets,
                                    const FilterLexicon &lexicon);

// Draws `n` distinct non-retweets uniformly without replacement. The draw is
// a pure function of (tweets, n, seed). Throws DataError when fewer than `n`
// tweets are eligible.
std::vector<Tweet> SampleRandom(const std::vector<Tweet> &tweets, size_t n,
                                uint64_t seed);

}  // namespace geoparse

#endif  // GEOPARSE_CORPUS_H_
