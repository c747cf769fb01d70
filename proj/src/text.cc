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

#include "geoparse/text.h"

#include "geoparse/errors.h"

namespace geoparse {

std::string FormatRecordError(const RecordError &error) {
  return "line " + std::to_string(error.line) + ": " + error.message;
}

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at text[i]; returns bytes consumed.
size_t DecodeOne(std::string_view text, size_t i, char32_t *cp) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  if (b0 < 0x80) {
    *cp = b0;
    return 1;
  }
  size_t len = 0;
  char32_t value = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    value = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    value = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    value = b0 & 0x07;
    min = 0x10000;
  } else {
    *cp = kReplacement;
    return 1;
  }
  if (i + len > text.size()) {
    *cp = kReplacement;
    return 1;
  }
  for (size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(text[i + k]);
    if ((b & 0xC0) != 0x80) {
      *cp = kReplacement;
      return 1;
    }
    value = (value << 6) | (b & 0x3F);
  }
  if (value < min || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
    *cp = kReplacement;
    return 1;
  }
  *cp = value;
  return len;
}

bool InLatinExtendedA(char32_t c) {
  return (c >= 0x0100 && c <= 0x0137) || (c >= 0x014A && c <= 0x0177);
}

}  // namespace

Utf8Text::Utf8Text(std::string text) : text_(std::move(text)) {
  code_points_.reserve(text_.size());
  offsets_.reserve(text_.size() + 1);
  size_t i = 0;
  while (i < text_.size()) {
    char32_t cp;
    offsets_.push_back(i);
    i += DecodeOne(text_, i, &cp);
    code_points_.push_back(cp);
  }
  offsets_.push_back(text_.size());
}

std::string Utf8Text::substr(size_t start, size_t end) const {
  if (end > size()) end = size();
  if (start >= end) return {};
  return text_.substr(offsets_[start], offsets_[end] - offsets_[start]);
}

std::vector<char32_t> DecodeUtf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    char32_t cp;
    i += DecodeOne(text, i, &cp);
    out.push_back(cp);
  }
  return out;
}

void AppendUtf8(char32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(const std::vector<char32_t> &cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) AppendUtf8(c, &out);
  return out;
}

size_t Utf8Length(std::string_view text) {
  size_t n = 0;
  size_t i = 0;
  while (i < text.size()) {
    char32_t cp;
    i += DecodeOne(text, i, &cp);
    ++n;
  }
  return n;
}

bool IsAsciiDigit(char32_t c) { return c >= '0' && c <= '9'; }

bool IsUpper(char32_t c) {
  if (c < 0x80) return c >= 'A' && c <= 'Z';
  if (c >= 0xC0 && c <= 0xDE) return c != 0xD7;
  if (InLatinExtendedA(c)) return (c % 2) == 0;
  if (c >= 0x0391 && c <= 0x03A9) return true;
  if (c >= 0x0400 && c <= 0x042F) return true;
  return false;
}

bool IsLower(char32_t c) {
  if (c < 0x80) return c >= 'a' && c <= 'z';
  if (c >= 0xDF && c <= 0xFF) return c != 0xF7;
  if (InLatinExtendedA(c)) return (c % 2) == 1;
  if (c >= 0x03B1 && c <= 0x03C9) return true;
  if (c >= 0x0430 && c <= 0x045F) return true;
  return false;
}

bool IsLetter(char32_t c) {
  if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  if (c >= 0xC0 && c <= 0x24F) return c != 0xD7 && c != 0xF7;
  if (c >= 0x0370 && c <= 0x04FF) return true;
  return false;
}

bool IsSpace(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v' || c == 0xA0 || c == 0x2028 || c == 0x2029 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x3000;
}

bool IsWordChar(char32_t c) { return IsAsciiDigit(c) || IsLetter(c); }

char32_t ToLower(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 32 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if (InLatinExtendedA(c) && (c % 2) == 0) return c + 1;
  if (c >= 0x0391 && c <= 0x03A9) return c + 32;
  if (c >= 0x0410 && c <= 0x042F) return c + 32;
  if (c >= 0x0400 && c <= 0x040F) return c + 80;
  return c;
}

char32_t ToUpper(char32_t c) {
  if (c < 0x80) return (c >= 'a' && c <= 'z') ? c - 32 : c;
  if (c >= 0xE0 && c <= 0xFE && c != 0xF7) return c - 32;
  if (InLatinExtendedA(c) && (c % 2) == 1) return c - 1;
  return c;
}

std::string ToLower(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  size_t i = 0;
  while (i < utf8.size()) {
    const auto b = static_cast<unsigned char>(utf8[i]);
    if (b < 0x80) {
      out.push_back(static_cast<char>((b >= 'A' && b <= 'Z') ? b + 32 : b));
      ++i;
      continue;
    }
    char32_t cp;
    const size_t n = DecodeOne(utf8, i, &cp);
    if (cp == kReplacement) {
      out.append(utf8.substr(i, n));
    } else {
      AppendUtf8(ToLower(cp), &out);
    }
    i += n;
  }
  return out;
}

std::vector<Token> Tokenize(const Utf8Text &text) {
  std::vector<Token> tokens;
  const size_t n = text.size();
  size_t i = 0;
  while (i < n) {
    const char32_t c = text.at(i);
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    Token tok;
    tok.start = i;
    if (IsWordChar(c)) {
      while (i < n && IsWordChar(text.at(i))) ++i;
      tok.kind = TokenKind::kWord;
    } else {
      ++i;
      tok.kind = TokenKind::kPunct;
    }
    tok.end = i;
    tok.text = text.substr(tok.start, tok.end);
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::vector<Token> Tokenize(std::string_view text) {
  return Tokenize(Utf8Text(std::string(text)));
}

std::vector<Token> SplitCamelCase(const Token &token) {
  const auto cps = DecodeUtf8(token.text);
  std::vector<Token> parts;
  size_t piece_start = 0;
  for (size_t i = 1; i <= cps.size(); ++i) {
    const bool boundary =
        i == cps.size() || (IsUpper(cps[i]) && IsLower(cps[i - 1])) ||
        (IsUpper(cps[i]) && i + 1 < cps.size() && IsUpper(cps[i - 1]) &&
         IsLower(cps[i + 1]));
    if (!boundary) continue;
    Token part;
    part.start = token.start + piece_start;
    part.end = token.start + i;
    part.kind = TokenKind::kWord;
    part.text = EncodeUtf8(std::vector<char32_t>(cps.begin() + piece_start,
                                                 cps.begin() + i));
    parts.push_back(std::move(part));
    piece_start = i;
  }
  return parts;
}

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitString(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace geoparse
