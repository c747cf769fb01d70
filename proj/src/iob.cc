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

#include "geoparse/iob.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "geoparse/text.h"

namespace geoparse {

namespace {

constexpr std::string_view kHeader = "# geoparse-iob v1";
constexpr std::string_view kIdPrefix = "# id=";
constexpr std::string_view kTextPrefix = "# text=";

[[noreturn]] void Fail(size_t line, const std::string &message) {
  throw DataError("IOB line " + std::to_string(line) + ": " + message);
}

struct PendingToken {
  std::string text;
  size_t start;
  size_t end;
  char prefix;  // 'O', 'B' or 'I'
  Category category;
  size_t line;
};

struct Block {
  std::string id;
  std::optional<std::string> text;
  size_t line = 0;
  std::vector<PendingToken> tokens;
};

AnnotatedTweet FinishBlock(Block &block, const IobOptions &options) {
  AnnotatedTweet at;
  at.tweet.id = block.id;
  if (block.text) {
    at.tweet.text = *block.text;
  } else {
    std::vector<char32_t> cps;
    for (const PendingToken &t : block.tokens) {
      const auto tok = DecodeUtf8(t.text);
      if (t.end - t.start != tok.size()) Fail(t.line, "token length does not match its offsets");
      if (cps.size() > t.start) Fail(t.line, "token offsets overlap previous token");
      cps.resize(t.start, U' ');
      cps.insert(cps.end(), tok.begin(), tok.end());
    }
    at.tweet.text = EncodeUtf8(cps);
  }
  const Utf8Text utf(at.tweet.text);

  std::optional<LocationSpan> open;
  size_t prev_end = 0;
  for (size_t i = 0; i < block.tokens.size(); ++i) {
    PendingToken &t = block.tokens[i];
    if (t.start >= t.end || t.end > utf.size()) Fail(t.line, "token offsets out of range");
    if (utf.substr(t.start, t.end) != t.text) Fail(t.line, "token text does not match tweet text");
    if (i > 0 && t.start < prev_end) Fail(t.line, "token offsets overlap previous token");
    prev_end = t.end;

    if (t.prefix == 'I' && !(open && open->category == t.category)) {
      if (!options.lenient) {
        Fail(t.line, "I-" + CategoryCode(t.category) + " does not continue a " +
                         CategoryCode(t.category) + " span");
      }
      t.prefix = 'B';
    }
    if (t.prefix != 'I' && open) {
      at.spans.push_back(*open);
      open.reset();
    }
    if (t.prefix == 'B') {
      open = LocationSpan{t.start, t.end, t.category, {}};
    } else if (t.prefix == 'I') {
      open->end = t.end;
    }
  }
  if (open) at.spans.push_back(*open);
  for (LocationSpan &s : at.spans) s.surface = utf.substr(s.start, s.end);
  return at;
}

void ParseTag(const std::string &tag, size_t line, PendingToken *tok) {
  if (tag == "O") {
    tok->prefix = 'O';
    return;
  }
  if (tag.size() >= 4 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
    if (auto c = ParseCategory(tag.substr(2)); c && tag[2] == 'C') {
      tok->prefix = tag[0];
      tok->category = *c;
      return;
    }
  }
  Fail(line, "unknown tag '" + tag + "'");
}

size_t ParseOffset(const std::string &s, size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    Fail(line, "bad offset '" + s + "'");
  }
  return std::stoul(s);
}

}  // namespace

std::vector<AnnotatedTweet> ReadIob(std::istream &in, const IobOptions &options) {
  std::vector<AnnotatedTweet> corpus;
  std::set<std::string> ids;
  std::optional<Block> block;
  std::string line;
  size_t lineno = 0;

  auto flush = [&] {
    if (!block) return;
    if (!ids.insert(block->id).second) Fail(block->line, "duplicate id '" + block->id + "'");
    corpus.push_back(FinishBlock(*block, options));
    block.reset();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (StartsWith(line, kIdPrefix) && line.find('\t') == std::string::npos) {
      flush();
      block = Block{};
      block->id = line.substr(kIdPrefix.size());
      block->line = lineno;
      if (block->id.empty()) Fail(lineno, "empty tweet id");
      continue;
    }
    if (StartsWith(line, kTextPrefix) && line.find('\t') == std::string::npos) {
      if (!block || !block->tokens.empty()) Fail(lineno, "text line outside a block header");
      try {
        block->text = nlohmann::json::parse(line.substr(kTextPrefix.size())).get<std::string>();
      } catch (const nlohmann::json::exception &) {
        Fail(lineno, "text header is not a JSON string");
      }
      continue;
    }
    // Token lines always carry tabs; a '#' line without one is a comment.
    if (line[0] == '#' && line.find('\t') == std::string::npos) continue;
    if (!block) Fail(lineno, "token line before any '# id=' header");
    const auto fields = SplitString(line, '\t');
    if (fields.size() != 4) Fail(lineno, "expected 4 tab-separated fields");
    PendingToken tok{fields[0], ParseOffset(fields[1], lineno), ParseOffset(fields[2], lineno),
                     'O', Category::kC1, lineno};
    ParseTag(fields[3], lineno, &tok);
    block->tokens.push_back(std::move(tok));
  }
  flush();
  return corpus;
}

std::vector<AnnotatedTweet> ReadIob(const std::filesystem::path &path,
                                    const IobOptions &options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read IOB corpus " + path.string());
  return ReadIob(in, options);
}

std::vector<IobToken> IobTokens(const AnnotatedTweet &at) {
  const Utf8Text utf(at.tweet.text);
  std::set<size_t> cuts;
  for (const LocationSpan &s : at.spans) {
    cuts.insert(s.start);
    cuts.insert(s.end);
  }
  std::vector<IobToken> out;
  size_t span_idx = 0;
  for (const Token &tok : Tokenize(utf)) {
    size_t piece_start = tok.start;
    auto it = cuts.upper_bound(tok.start);
    while (piece_start < tok.end) {
      const size_t piece_end = (it != cuts.end() && *it < tok.end) ? *it++ : tok.end;
      IobToken t{utf.substr(piece_start, piece_end), piece_start, piece_end, "O"};
      while (span_idx < at.spans.size() && at.spans[span_idx].end <= piece_start) ++span_idx;
      if (span_idx < at.spans.size() && at.spans[span_idx].start <= piece_start) {
        const LocationSpan &s = at.spans[span_idx];
        t.tag = (s.start == piece_start ? "B-" : "I-") + CategoryCode(s.category);
      }
      out.push_back(std::move(t));
      piece_start = piece_end;
    }
  }
  return out;
}

void WriteIobHeader(std::ostream &out) { out << kHeader << '\n'; }

void WriteIobBlock(const AnnotatedTweet &at, std::ostream &out) {
  if (at.tweet.id.empty()) throw DataError("tweet with empty id");
  if (at.tweet.id.find_first_of("\t\r\n") != std::string::npos) {
    throw DataError("tweet id contains a tab or newline");
  }
  if (auto err = ValidateAnnotation(at)) throw DataError("tweet " + at.tweet.id + ": " + *err);
  out << '\n' << kIdPrefix << at.tweet.id << '\n';
  out << kTextPrefix << nlohmann::json(at.tweet.text).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  for (const IobToken &t : IobTokens(at)) {
    out << t.text << '\t' << t.start << '\t' << t.end << '\t' << t.tag << '\n';
  }
}

void WriteIob(const std::vector<AnnotatedTweet> &corpus, std::ostream &out) {
  std::set<std::string> ids;
  for (const AnnotatedTweet &at : corpus) {
    if (!ids.insert(at.tweet.id).second) throw DataError("duplicate tweet id '" + at.tweet.id + "'");
  }
  WriteIobHeader(out);
  for (const AnnotatedTweet &at : corpus) WriteIobBlock(at, out);
}

void WriteIob(const std::vector<AnnotatedTweet> &corpus,
              const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write IOB corpus " + path.string());
  WriteIob(corpus, out);
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace geoparse
