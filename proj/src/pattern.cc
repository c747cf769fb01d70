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

#include "geoparse/pattern.h"

#include <cctype>
#include <functional>

namespace geoparse {

struct ClassTerm {
  enum Kind { kWord, kPunct, kNum, kCap, kTitle, kLower, kUpper, kOrd, kAlnum, kNamed };
  Kind kind = kWord;
  bool negate = false;
  std::string name;
  size_t min_len = 1;
  size_t max_len = 64;
};

struct PatternNode {
  enum Type { kLiteral, kClass, kRegex, kSeq, kAlt, kRepeat, kCapture };
  Type type = kSeq;
  std::string text;  // literal (lowercased) or capture role
  std::vector<ClassTerm> terms;
  std::shared_ptr<const std::regex> regex;
  std::vector<std::shared_ptr<const PatternNode>> children;
  size_t min = 0;
  size_t max = 0;
};

namespace {

using NodePtr = std::shared_ptr<const PatternNode>;

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
 public:
  Parser(std::string_view src, const ClassTable &classes,
         const std::map<std::string, NodePtr, std::less<>> &define_roots)
      : src_(src), classes_(classes), define_roots_(define_roots) {}

  NodePtr ParseAll() {
    NodePtr root = ParseAlt();
    SkipSpace();
    if (pos_ < src_.size()) Error("unexpected '" + std::string(1, src_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void Error(const std::string &msg) const {
    throw PatternError("pattern column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void SkipSpace() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  bool Peek(char c) {
    SkipSpace();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  NodePtr ParseAlt() {
    std::vector<NodePtr> options{ParseSeq()};
    while (Peek('|')) {
      ++pos_;
      options.push_back(ParseSeq());
    }
    if (options.size() == 1) return options[0];
    auto node = std::make_shared<PatternNode>();
    node->type = PatternNode::kAlt;
    node->children = std::move(options);
    return node;
  }

  NodePtr ParseSeq() {
    std::vector<NodePtr> items;
    while (true) {
      SkipSpace();
      if (pos_ >= src_.size() || src_[pos_] == '|' || src_[pos_] == ')') break;
      items.push_back(ParseItem());
    }
    if (items.empty()) Error("empty alternative");
    if (items.size() == 1) return items[0];
    auto node = std::make_shared<PatternNode>();
    node->type = PatternNode::kSeq;
    node->children = std::move(items);
    return node;
  }

  NodePtr ParseItem() {
    SkipSpace();
    std::string role;
    size_t p = pos_;
    while (p < src_.size() && IsIdentChar(src_[p])) ++p;
    if (p > pos_ && p < src_.size() && src_[p] == ':') {
      role = std::string(src_.substr(pos_, p - pos_));
      pos_ = p + 1;
    }
    NodePtr atom = ParseQuantifier(ParseAtom());
    if (role.empty()) return atom;
    auto node = std::make_shared<PatternNode>();
    node->type = PatternNode::kCapture;
    node->text = role;
    node->children = {atom};
    return node;
  }

  size_t ParseInt() {
    size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) Error("expected a number");
    return std::stoul(std::string(src_.substr(start, pos_ - start)));
  }

  NodePtr ParseQuantifier(NodePtr atom) {
    while (pos_ < src_.size()) {
      size_t min = 0;
      size_t max = 0;
      const char c = src_[pos_];
      if (c == '?') {
        min = 0;
        max = 1;
        ++pos_;
      } else if (c == '*') {
        min = 0;
        max = 64;
        ++pos_;
      } else if (c == '+') {
        min = 1;
        max = 64;
        ++pos_;
      } else if (c == '{' && pos_ + 1 < src_.size() &&
                 std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        ++pos_;
        min = ParseInt();
        max = min;
        if (pos_ < src_.size() && src_[pos_] == ',') {
          ++pos_;
          max = (pos_ < src_.size() && src_[pos_] == '}') ? 64 : ParseInt();
        }
        if (pos_ >= src_.size() || src_[pos_] != '}') Error("expected '}'");
        ++pos_;
        if (max < min || max == 0) Error("bad repetition bounds");
      } else {
        break;
      }
      auto node = std::make_shared<PatternNode>();
      node->type = PatternNode::kRepeat;
      node->min = min;
      node->max = max;
      node->children = {atom};
      atom = node;
    }
    return atom;
  }

  NodePtr ParseAtom() {
    SkipSpace();
    if (pos_ >= src_.size()) Error("unexpected end of pattern");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = ParseAlt();
      if (!Peek(')')) Error("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '\'') return ParseLiteral();
    if (c == '<') return ParseClass();
    if (c == '/') return ParseRegex();
    if (c == '{') return ParseReference();
    Error("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr ParseLiteral() {
    ++pos_;
    std::string text;
    while (true) {
      if (pos_ >= src_.size()) Error("unterminated literal");
      char c = src_[pos_++];
      if (c == '\\' && pos_ < src_.size()) {
        text.push_back(src_[pos_++]);
        continue;
      }
      if (c == '\'') break;
      text.push_back(c);
    }
    if (text.empty()) Error("empty literal");
    auto node = std::make_shared<PatternNode>();
    node->type = PatternNode::kLiteral;
    node->text = ToLower(text);
    return node;
  }

  NodePtr ParseClass() {
    ++pos_;
    const size_t close = src_.find('>', pos_);
    if (close == std::string_view::npos) Error("unterminated class");
    const std::string body(src_.substr(pos_, close - pos_));
    auto node = std::make_shared<PatternNode>();
    node->type = PatternNode::kClass;
    for (std::string part : SplitString(body, '&')) {
      part = Trim(part);
      ClassTerm term;
      if (!part.empty() && part[0] == '!') {
        term.negate = true;
        part = Trim(part.substr(1));
      }
      std::string name = part;
      std::string arg;
      if (auto colon = part.find(':'); colon != std::string::npos) {
        name = part.substr(0, colon);
        arg = part.substr(colon + 1);
      }
      if (name.empty()) Error("empty class name");
      if (name == "word") {
        term.kind = ClassTerm::kWord;
      } else if (name == "punct") {
        term.kind = ClassTerm::kPunct;
      } else if (name == "num") {
        term.kind = ClassTerm::kNum;
        if (!arg.empty()) {
          const auto dash = arg.find('-');
          try {
            term.min_len = std::stoul(arg.substr(0, dash));
            term.max_len = dash == std::string::npos ? term.min_len : std::stoul(arg.substr(dash + 1));
          } catch (const std::exception &) {
            Error("bad digit count '" + arg + "'");
          }
          if (term.min_len == 0 || term.max_len < term.min_len) Error("bad digit count '" + arg + "'");
        }
      } else if (name == "cap") {
        term.kind = ClassTerm::kCap;
      } else if (name == "title") {
        term.kind = ClassTerm::kTitle;
      } else if (name == "lower") {
        term.kind = ClassTerm::kLower;
      } else if (name == "upper") {
        term.kind = ClassTerm::kUpper;
      } else if (name == "ord") {
        term.kind = ClassTerm::kOrd;
      } else if (name == "alnum") {
        term.kind = ClassTerm::kAlnum;
      } else if (classes_.Has(name)) {
        term.kind = ClassTerm::kNamed;
        term.name = name;
      } else {
        Error("unknown class '" + name + "'");
      }
      if (!arg.empty() && term.kind != ClassTerm::kNum) Error("class '" + name + "' takes no argument");
      node->terms.push_back(std::move(term));
    }
    pos_ = close + 1;
    return node;
  }

  NodePtr ParseRegex() {
    ++pos_;
    std::string expr;
    while (true) {
      if (pos_ >= src_.size()) Error("unterminated regular expression");
      char c = src_[pos_++];
      if (c == '\\' && pos_ < src_.size() && src_[pos_] == '/') {
        expr.push_back('/');
        ++pos_;
        continue;
      }
      if (c == '/') break;
      expr.push_back(c);
    }
    auto node = std::make_shared<PatternNode>();
    node->type = PatternNode::kRegex;
    try {
      node->regex = std::make_shared<const std::regex>(
          expr, std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
    } catch (const std::regex_error &e) {
      Error("bad regular expression /" + expr + "/: " + e.what());
    }
    return node;
  }

  NodePtr ParseReference() {
    ++pos_;
    const size_t close = src_.find('}', pos_);
    if (close == std::string_view::npos) Error("unterminated reference");
    const std::string name = Trim(src_.substr(pos_, close - pos_));
    auto it = define_roots_.find(name);
    if (it == define_roots_.end()) Error("undefined reference {" + name + "}");
    pos_ = close + 1;
    return it->second;
  }

  std::string_view src_;
  size_t pos_ = 0;
  const ClassTable &classes_;
  const std::map<std::string, NodePtr, std::less<>> &define_roots_;
};

bool TermMatches(const ClassTerm &term, const TokenInfo &t, const ClassTable &classes) {
  bool ok = false;
  switch (term.kind) {
    case ClassTerm::kWord: ok = t.word; break;
    case ClassTerm::kPunct: ok = !t.word; break;
    case ClassTerm::kNum:
      ok = t.digits && t.lower.size() >= term.min_len && t.lower.size() <= term.max_len;
      break;
    case ClassTerm::kCap: ok = t.cap; break;
    case ClassTerm::kTitle: ok = t.title; break;
    case ClassTerm::kLower: ok = t.lower_initial; break;
    case ClassTerm::kUpper: ok = t.upper; break;
    case ClassTerm::kOrd: ok = t.ordinal; break;
    case ClassTerm::kAlnum: ok = t.alnum; break;
    case ClassTerm::kNamed: ok = classes.Contains(term.name, t.lower); break;
  }
  return ok != term.negate;
}

constexpr size_t kStepBudget = 200000;

class Matcher {
 public:
  Matcher(const std::vector<TokenInfo> &tokens, const ClassTable &classes)
      : tokens_(tokens), classes_(classes) {}

  using Cont = std::function<bool(size_t)>;

  // Returns true to abort the search.
  bool Match(const PatternNode &node, size_t pos, const Cont &k) {
    if (++steps_ > kStepBudget) return true;
    switch (node.type) {
      case PatternNode::kLiteral:
        if (pos < tokens_.size() && tokens_[pos].lower == node.text) return k(pos + 1);
        return false;
      case PatternNode::kClass:
        if (pos >= tokens_.size()) return false;
        for (const ClassTerm &term : node.terms) {
          if (!TermMatches(term, tokens_[pos], classes_)) return false;
        }
        return k(pos + 1);
      case PatternNode::kRegex:
        if (pos < tokens_.size() && std::regex_match(tokens_[pos].token.text, *node.regex)) {
          return k(pos + 1);
        }
        return false;
      case PatternNode::kSeq:
        return MatchSeq(node, 0, pos, k);
      case PatternNode::kAlt:
        for (const auto &child : node.children) {
          if (Match(*child, pos, k)) return true;
        }
        return false;
      case PatternNode::kRepeat:
        return MatchRepeat(node, 0, pos, k);
      case PatternNode::kCapture:
        return Match(*node.children[0], pos, [&](size_t end) {
          captures_.push_back({node.text, pos, end});
          const bool stop = k(end);
          captures_.pop_back();
          return stop;
        });
    }
    return false;
  }

  std::vector<Capture> captures_;

 private:
  bool MatchSeq(const PatternNode &node, size_t idx, size_t pos, const Cont &k) {
    if (idx == node.children.size()) return k(pos);
    return Match(*node.children[idx], pos,
                 [&](size_t next) { return MatchSeq(node, idx + 1, next, k); });
  }

  bool MatchRepeat(const PatternNode &node, size_t count, size_t pos, const Cont &k) {
    if (count < node.max) {
      const bool stop = Match(*node.children[0], pos, [&](size_t next) {
        if (next == pos) return false;
        return MatchRepeat(node, count + 1, next, k);
      });
      if (stop) return true;
    }
    if (count >= node.min) return k(pos);
    return false;
  }

  const std::vector<TokenInfo> &tokens_;
  const ClassTable &classes_;
  size_t steps_ = 0;
};

}  // namespace

bool ClassTable::Has(std::string_view name) const {
  if (words.count(name)) return true;
  return abbreviations && abbreviations->HasKind(name);
}

bool ClassTable::Contains(std::string_view name, const std::string &lower) const {
  auto it = words.find(name);
  if (it != words.end() && it->second.count(lower)) return true;
  return abbreviations && abbreviations->IsKind(lower, name);
}

std::vector<TokenInfo> AnalyzeTokens(std::vector<Token> tokens) {
  std::vector<TokenInfo> out;
  out.reserve(tokens.size());
  for (Token &tok : tokens) {
    TokenInfo info;
    info.lower = ToLower(tok.text);
    info.word = tok.is_word();
    if (info.word) {
      const auto cps = DecodeUtf8(tok.text);
      bool has_digit = false;
      bool has_letter = false;
      bool has_lower = false;
      for (char32_t c : cps) {
        has_digit |= IsAsciiDigit(c);
        has_letter |= IsLetter(c);
        has_lower |= IsLower(c);
      }
      info.digits = has_digit && !has_letter;
      info.alnum = has_digit && has_letter;
      info.cap = IsUpper(cps[0]);
      info.lower_initial = IsLower(cps[0]);
      info.upper = has_letter && !has_lower;
      bool rest_lower = false;
      for (size_t i = 1; i < cps.size(); ++i) rest_lower |= IsLower(cps[i]);
      info.title = info.cap && rest_lower;
      if (cps.size() >= 3) {
        size_t i = 0;
        while (i < cps.size() && IsAsciiDigit(cps[i])) ++i;
        if (i > 0 && cps.size() - i == 2) {
          const std::string suf = info.lower.substr(info.lower.size() - 2);
          info.ordinal = suf == "st" || suf == "nd" || suf == "rd" || suf == "th";
        }
      }
    }
    info.token = std::move(tok);
    out.push_back(std::move(info));
  }
  return out;
}

Pattern Pattern::Parse(std::string_view source, std::shared_ptr<const ClassTable> classes,
                       const std::map<std::string, Pattern, std::less<>> &defines) {
  if (!classes) throw PatternError("pattern needs a class table");
  std::map<std::string, NodePtr, std::less<>> roots;
  for (const auto &[name, pattern] : defines) roots[name] = pattern.root_;
  Parser parser(source, *classes, roots);
  Pattern p;
  p.root_ = parser.ParseAll();
  p.source_ = std::string(source);
  p.classes_ = std::move(classes);
  return p;
}

std::optional<PatternMatch> Pattern::MatchAt(const std::vector<TokenInfo> &tokens,
                                             size_t start) const {
  if (!root_ || start >= tokens.size()) return std::nullopt;
  Matcher matcher(tokens, *classes_);
  std::optional<PatternMatch> best;
  matcher.Match(*root_, start, [&](size_t end) {
    if (end > start && (!best || end > best->end)) {
      best = PatternMatch{end, matcher.captures_};
    }
    return false;
  });
  return best;
}

}  // namespace geoparse
