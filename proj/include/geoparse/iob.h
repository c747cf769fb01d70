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

#ifndef GEOPARSE_IOB_H_
#define GEOPARSE_IOB_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "geoparse/corpus.h"

namespace geoparse {

// CoNLL-style corpus with explicit character offsets:
//
//   # geoparse-iob v1
//   # id=<tweet id>
//   # text=<tweet text as a JSON string>
//   <token>\t<start>\t<end>\t<tag>
//   ...
//   <blank line>
//
// Tags are O, B-C1..B-C10 and I-C1..I-C10. The text line is optional on
// read; without it the text is rebuilt by placing tokens at their offsets
// and padding gaps with spaces.

struct IobOptions {
  // Rewrite an orphan I-X (not continuing an X span) to B-X instead of
  // failing.
  bool lenient = false;
};

std::vector<AnnotatedTweet> ReadIob(std::istream &in, const IobOptions &options = {});
std::vector<AnnotatedTweet> ReadIob(const std::filesystem::path &path,
                                    const IobOptions &options = {});

// Throws DataError if a tweet violates the annotation invariants.
void WriteIob(const std::vector<AnnotatedTweet> &corpus, std::ostream &out);
void WriteIob(const std::vector<AnnotatedTweet> &corpus,
              const std::filesystem::path &path);

// Streaming pieces of WriteIob. Id uniqueness is left to the caller.
void WriteIobHeader(std::ostream &out);
void WriteIobBlock(const AnnotatedTweet &tweet, std::ostream &out);

struct IobToken {
  std::string text;
  size_t start = 0;
  size_t end = 0;
  std::string tag;
};

// Tokens of a tweet with their tags; word/punctuation tokens are further
// split wherever a span boundary falls inside them.
std::vector<IobToken> IobTokens(const AnnotatedTweet &tweet);

}  // namespace geoparse

#endif  // GEOPARSE_IOB_H_
