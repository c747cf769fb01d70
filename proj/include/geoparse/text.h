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

#ifndef GEOPARSE_TEXT_H_
#define GEOPARSE_TEXT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace geoparse {

// All span offsets in this library count Unicode code points, not bytes.
// Invalid UTF-8 bytes decode to U+FFFD one byte at a time so every byte of
// the input belongs to exactly one code point.
class Utf8Text {
 public:
  Utf8Text() : offsets_{0} {}
  explicit Utf8Text(std::string text);

  const std::string &str() const { return text_; }
  size_t size() const { return code_points_.size(); }
  bool empty() const { return code_points_.empty(); }

  char32_t at(size_t i) const { return code_points_[i]; }
  const std::vector<char32_t> &code_points() const { return code_points_; }

  size_t byte_offset(size_t cp) const { return offsets_[cp]; }

  // Substring over code point range [start, end).
  std::string substr(size_t start, size_t end) const;

 private:
  std::string text_;
  std::vector<char32_t> code_points_;
  std::vector<size_t> offsets_;  // size() + 1 entries
};

std::vector<char32_t> DecodeUtf8(std::string_view text);
void AppendUtf8(char32_t cp, std::string *out);
std::string EncodeUtf8(const std::vector<char32_t> &cps);
size_t Utf8Length(std::string_view text);

bool IsAsciiDigit(char32_t c);
bool IsLetter(char32_t c);
bool IsUpper(char32_t c);
bool IsLower(char32_t c);
bool IsSpace(char32_t c);
// Letters and digits; the unit from which word tokens are built.
bool IsWordChar(char32_t c);

char32_t ToLower(char32_t c);
char32_t ToUpper(char32_t c);
std::string ToLower(std::string_view utf8);

enum class TokenKind { kWord, kPunct };

struct Token {
  size_t start = 0;  // code point offsets
  size_t end = 0;
  std::string text;
  TokenKind kind = TokenKind::kWord;

  bool is_word() const { return kind == TokenKind::kWord; }
};

// Word tokens are maximal runs of word characters; every other
// non-whitespace code point is its own punctuation token.
std::vector<Token> Tokenize(const Utf8Text &text);
std::vector<Token> Tokenize(std::string_view text);

// Splits a word at lower-to-upper transitions ("HoustonFlood" -> "Houston",
// "Flood"). Offsets stay relative to the text the token came from.
std::vector<Token> SplitCamelCase(const Token &token);

std::string Trim(std::string_view s);
std::vector<std::string> SplitString(std::string_view s, char sep);
bool StartsWith(std::string_view s, std::string_view prefix);

}  // namespace geoparse

#endif  // GEOPARSE_TEXT_H_
