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


#include "geoparse/recognizer.h"

#include <algorithm>
#include <tuple>

namespace geoparse {

using nlohmann::json;

struct Recognizer::Candidate {
  size_t start = 0;  // code points
  size_t end = 0;
  Category category = Category::kC1;
  int priority = 0;
  std::string rule_id;
  double score = 1.0;
  std::vector<SpanPart> parts;
  bool from_hashtag_split = false;
};

struct Recognizer::Analysis {
  Utf8Text text;
  std::vector<TokenInfo> tokens;
  std::vector<Candidate> grammar;
  std::vector<Candidate> gazetteer;
};

const SpanPart *RecognizedSpan::part(std::string_view role) const {
  for (const SpanPart &p : parts) {
    if (p.role == role) return &p;
  }
  return nullptr;
}

namespace {

constexpr int kGazetteerPriority = 0;

// Narrows a token range to its first and last word tokens.
bool TrimRange(const std::vector<TokenInfo> &tokens, size_t &begin, size_t &end) {
  while (begin < end && !tokens[begin].word) ++begin;
  while (end > begin && !tokens[end - 1].word) --end;
  return begin < end;
}

// Lowercased word tokens joined by single spaces.
std::string PlainKey(std::string_view s) {
  std::string out;
  for (const Token &t : Tokenize(s)) {
    if (!t.is_word()) continue;
    if (!out.empty()) out.push_back(' ');
    out += ToLower(t.text);
  }
  return out;
}

bool IsNameJoiner(const std::string &punct) {
  return punct == "." || punct == "-" || punct == "'" || punct == "\xE2\x80\x99";
}

}  // namespace

Recognizer::Recognizer(const GrammarRuleSet &rules, const GazetteerIndex *gazetteer,
                       RecognizerOptions options)
    : rules_(rules), gazetteer_(gazetteer), options_(options) {}

Recognizer::Analysis Recognizer::Analyze(std::string_view text) const {
  Analysis a;
  a.text = Utf8Text(std::string(text));
  a.tokens = AnalyzeTokens(Tokenize(a.text));
  return a;
}

void Recognizer::AddGrammarCandidates(Analysis &a) const {
  const auto &tokens = a.tokens;
  auto make_part = [&](const Capture &c) -> std::optional<SpanPart> {
    size_t b = c.begin;
    size_t e = c.end;
    if (!TrimRange(tokens, b, e)) return std::nullopt;
    SpanPart part{c.role, tokens[b].token.start, tokens[e - 1].token.end, {}};
    part.surface = a.text.substr(part.start, part.end);
    return part;
  };
  for (const GrammarRule &rule : rules_.rules()) {
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (!tokens[i].word) continue;
      auto m = rule.pattern.MatchAt(tokens, i);
      if (!m) continue;
      std::vector<std::pair<size_t, size_t>> regions;
      for (const Capture &c : m->captures) {
        if (c.role == "span") regions.emplace_back(c.begin, c.end);
      }
      if (regions.empty()) regions.emplace_back(i, m->end);
      for (auto [b, e] : regions) {
        if (!TrimRange(tokens, b, e)) continue;
        Candidate cand;
        cand.start = tokens[b].token.start;
        cand.end = tokens[e - 1].token.end;
        cand.category = rule.category;
        cand.priority = rule.priority;
        cand.rule_id = rule.id;
        std::vector<const Capture *> outside;
        for (const Capture &c : m->captures) {
          if (c.role == "span") continue;
          if (c.begin >= b && c.end <= e) {
            if (auto part = make_part(c)) cand.parts.push_back(*part);
          } else {
            outside.push_back(&c);
          }
        }
        for (const Capture *c : outside) {
          const bool present = std::any_of(cand.parts.begin(), cand.parts.end(),
                                           [&](const SpanPart &p) { return p.role == c->role; });
          if (present) continue;
          if (auto part = make_part(*c)) cand.parts.push_back(*part);
        }
        std::sort(cand.parts.begin(), cand.parts.end(), [](const SpanPart &x, const SpanPart &y) {
          return std::tie(x.start, x.end, x.role) < std::tie(y.start, y.end, y.role);
        });
        a.grammar.push_back(std::move(cand));
      }
    }
  }
}

void Recognizer::AddGazetteerCandidates(Analysis &a) const {
  if (!gazetteer_ || gazetteer_->max_name_words() == 0) return;
  const GazetteerIndex &gaz = *gazetteer_;
  const auto &tokens = a.tokens;

  // Best hit for a token sequence, or nothing.
  auto best_hit = [&](const std::string &surface,
                      bool c9_only) -> std::optional<std::pair<GazetteerHit, double>> {
    const std::string key = NormalizeName(surface, gaz.abbreviations());
    if (key.empty()) return std::nullopt;
    std::optional<std::pair<GazetteerHit, double>> best;
    for (const GazetteerHit &hit : gaz.LookupNormalized(key)) {
      const Category cat = CategoryOf(hit.entry->feature_class);
      if (c9_only && cat != Category::kC9) continue;
      double score = 0.7;
      if (hit.tier == NameTier::kPrimary) {
        score = PlainKey(surface) == PlainKey(hit.entry->primary_name) ? 1.0 : 0.9;
      } else if (hit.tier == NameTier::kAlternate) {
        score = 0.8;
      }
      if (!best) {
        best = {hit, score};
        continue;
      }
      const Category best_cat = CategoryOf(best->first.entry->feature_class);
      const auto rank = [](double s, Category c, const std::string &id) {
        return std::make_tuple(-s, CategoryPrecedence(c), id);
      };
      if (rank(score, cat, hit.entry->id) < rank(best->second, best_cat, best->first.entry->id)) {
        best = {hit, score};
      }
    }
    return best;
  };

  auto add = [&](size_t start, size_t end, const GazetteerHit &hit, double score, bool split) {
    Candidate cand;
    cand.start = start;
    cand.end = end;
    cand.category = CategoryOf(hit.entry->feature_class);
    cand.priority = kGazetteerPriority;
    cand.rule_id = "gazetteer:" + hit.entry->id;
    cand.score = score;
    cand.from_hashtag_split = split;
    a.gazetteer.push_back(std::move(cand));
    return &a.gazetteer.back();
  };

  const size_t max_words = gaz.max_name_words();
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].word) continue;
    size_t words = 0;
    bool capitalized = false;
    for (size_t j = i; j < tokens.size(); ++j) {
      if (!tokens[j].word) {
        if (IsNameJoiner(tokens[j].token.text)) continue;
        break;
      }
      if (++words > max_words) break;
      capitalized |= tokens[j].cap;
      if (!capitalized && !options_.caseless) continue;
      const size_t start = tokens[i].token.start;
      const size_t end = tokens[j].token.end;
      auto best = best_hit(a.text.substr(start, end), false);
      if (!best) continue;
      Candidate *cand = add(start, end, best->first, best->second, false);
      // "Rockport, TX": a town absorbs a following state.
      if (cand->category == Category::kC9) {
        size_t k = j + 1;
        if (k < tokens.size() && tokens[k].token.text == ",") ++k;
        if (k < tokens.size() && tokens[k].word && tokens[k].cap &&
            gaz.abbreviations().IsKind(tokens[k].lower, "state")) {
          Candidate extended = *cand;
          extended.end = tokens[k].token.end;
          extended.parts.push_back({"state", tokens[k].token.start, tokens[k].token.end,
                                    tokens[k].token.text});
          a.gazetteer.push_back(std::move(extended));
        }
      }
    }
  }

  // Camel-case hashtags ("#HoustonFlood") are searched for admin units only.
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].token.text != "#" || !tokens[i + 1].word ||
        tokens[i].token.end != tokens[i + 1].token.start) {
      continue;
    }
    const std::vector<Token> pieces = SplitCamelCase(tokens[i + 1].token);
    if (pieces.size() < 2) continue;
    for (size_t p = 0; p < pieces.size(); ++p) {
      for (size_t q = p; q < pieces.size() && q - p < max_words; ++q) {
        std::string surface;
        for (size_t r = p; r <= q; ++r) {
          if (r > p) surface.push_back(' ');
          surface += pieces[r].text;
        }
        if (!options_.caseless && !IsUpper(DecodeUtf8(pieces[p].text)[0])) continue;
        auto best = best_hit(surface, true);
        if (!best) continue;
        add(pieces[p].start, pieces[q].end, best->first, best->second, true);
      }
    }
  }
}

std::vector<RecognizedSpan> Recognizer::Select(Analysis &a, std::vector<Candidate> candidates) const {
  std::sort(candidates.begin(), candidates.end(), [](const Candidate &x, const Candidate &y) {
    const size_t lx = x.end - x.start;
    const size_t ly = y.end - y.start;
    return std::make_tuple(-static_cast<long long>(lx), CategoryPrecedence(x.category), -x.priority,
                           -x.score, x.start, x.rule_id) <
           std::make_tuple(-static_cast<long long>(ly), CategoryPrecedence(y.category), -y.priority,
                           -y.score, y.start, y.rule_id);
  });
  std::vector<Candidate> accepted;
  for (Candidate &c : candidates) {
    const bool overlaps = std::any_of(accepted.begin(), accepted.end(), [&](const Candidate &o) {
      return c.start < o.end && o.start < c.end;
    });
    if (!overlaps) accepted.push_back(std::move(c));
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Candidate &x, const Candidate &y) { return x.start < y.start; });

  // A hashtag-split admin unit repeats a name the tweet already carries.
  const AbbreviationTable &table = rules_.abbreviations();
  std::vector<Candidate> kept;
  for (size_t i = 0; i < accepted.size(); ++i) {
    const Candidate &c = accepted[i];
    if (c.from_hashtag_split) {
      const std::string key = NormalizeName(a.text.substr(c.start, c.end), table);
      bool repeated = false;
      for (size_t j = 0; j < accepted.size() && !repeated; ++j) {
        if (j == i || (accepted[j].from_hashtag_split && j > i)) continue;
        repeated = NormalizeName(a.text.substr(accepted[j].start, accepted[j].end), table) == key;
      }
      if (repeated) continue;
    }
    kept.push_back(c);
  }

  // "Both A and B are flooded" names two roads, not their crossing.
  std::vector<Candidate> result;
  for (Candidate &c : kept) {
    const SpanPart *ra = nullptr;
    const SpanPart *rb = nullptr;
    for (const SpanPart &p : c.parts) {
      if (p.role == "road_a" && !ra) ra = &p;
      if (p.role == "road_b" && !rb) rb = &p;
    }
    bool split = false;
    if (c.category == Category::kC5 && ra && rb && ra->end <= rb->start && ra->start == c.start &&
        rb->end == c.end) {
      const std::string connector = ToLower(Trim(a.text.substr(ra->end, rb->start)));
      size_t prev = a.tokens.size();
      for (size_t t = 0; t < a.tokens.size(); ++t) {
        if (a.tokens[t].token.end <= c.start && a.tokens[t].word) prev = t;
      }
      split = (connector == "and" || connector == "&") && prev < a.tokens.size() &&
              a.tokens[prev].lower == "both";
    }
    if (!split) {
      result.push_back(std::move(c));
      continue;
    }
    for (const SpanPart *road : {ra, rb}) {
      Candidate piece;
      piece.start = road->start;
      piece.end = road->end;
      piece.priority = c.priority;
      piece.rule_id = c.rule_id;
      const bool highway = std::any_of(a.grammar.begin(), a.grammar.end(), [&](const Candidate &g) {
        return g.category == Category::kC3 && g.start == road->start && g.end == road->end;
      });
      piece.category = highway ? Category::kC3 : Category::kC2;
      piece.parts.push_back({highway ? "highway" : "street", road->start, road->end, road->surface});
      result.push_back(std::move(piece));
    }
  }

  // An exit named by its cross street belongs to the nearest highway before it.
  for (Candidate &c : result) {
    if (c.category != Category::kC4) continue;
    const bool has_highway = std::any_of(c.parts.begin(), c.parts.end(),
                                         [](const SpanPart &p) { return p.role == "highway"; });
    if (has_highway) continue;
    const Candidate *nearest = nullptr;
    for (const Candidate &g : a.grammar) {
      if (g.category != Category::kC3 || g.end > c.start) continue;
      if (!nearest || g.end > nearest->end || (g.end == nearest->end && g.start < nearest->start)) {
        nearest = &g;
      }
    }
    if (nearest) {
      c.parts.insert(c.parts.begin(), SpanPart{"highway", nearest->start, nearest->end,
                                               a.text.substr(nearest->start, nearest->end)});
    }
  }

  std::vector<RecognizedSpan> out;
  for (Candidate &c : result) {
    RecognizedSpan s;
    s.span = LocationSpan{c.start, c.end, c.category, a.text.substr(c.start, c.end)};
    s.rule_id = std::move(c.rule_id);
    s.score = c.score;
    s.parts = std::move(c.parts);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const RecognizedSpan &x, const RecognizedSpan &y) {
    return x.span.start < y.span.start;
  });
  return out;
}

std::vector<RecognizedSpan> Recognizer::Recognize(std::string_view text) const {
  Analysis a = Analyze(text);
  AddGrammarCandidates(a);
  AddGazetteerCandidates(a);
  std::vector<Candidate> all = a.grammar;
  all.insert(all.end(), a.gazetteer.begin(), a.gazetteer.end());
  return Select(a, std::move(all));
}

std::vector<RecognizedSpan> Recognizer::RecognizeCategory(std::string_view text,
                                                          Category category) const {
  Analysis a = Analyze(text);
  AddGrammarCandidates(a);
  std::vector<Candidate> chosen;
  for (const Candidate &c : a.grammar) {
    if (c.category == category) chosen.push_back(c);
  }
  auto spans = Select(a, std::move(chosen));
  std::erase_if(spans, [&](const RecognizedSpan &s) { return s.span.category != category; });
  return spans;
}

std::vector<RecognizedSpan> Recognizer::MatchGazetteerNames(std::string_view text) const {
  Analysis a = Analyze(text);
  AddGazetteerCandidates(a);
  std::vector<Candidate> all = a.gazetteer;
  return Select(a, std::move(all));
}

std::vector<RecognizedSpan> Recognize(std::string_view text, const GrammarRuleSet &rules,
                                      const GazetteerIndex *gazetteer) {
  return Recognizer(rules, gazetteer).Recognize(text);
}

namespace {

std::vector<RecognizedSpan> BuiltinCategory(std::string_view text, Category category) {
  return Recognizer(GrammarRuleSet::Builtin()).RecognizeCategory(text, category);
}

}  // namespace

std::vector<RecognizedSpan> RecognizeAddress(std::string_view text) {
  return BuiltinCategory(text, Category::kC1);
}
std::vector<RecognizedSpan> RecognizeHighway(std::string_view text) {
  return BuiltinCategory(text, Category::kC3);
}
std::vector<RecognizedSpan> RecognizeExit(std::string_view text) {
  return BuiltinCategory(text, Category::kC4);
}
std::vector<RecognizedSpan> RecognizeIntersection(std::string_view text) {
  return BuiltinCategory(text, Category::kC5);
}
std::vector<RecognizedSpan> RecognizeMultiArea(std::string_view text) {
  return BuiltinCategory(text, Category::kC10);
}

std::vector<RecognizedSpan> MatchGazetteerNames(std::string_view text, const GazetteerIndex &gazetteer,
                                                RecognizerOptions options) {
  return Recognizer(GrammarRuleSet::Builtin(), &gazetteer, options).MatchGazetteerNames(text);
}

json SpanToJson(const RecognizedSpan &s) {
  json parts = json::array();
  for (const SpanPart &p : s.parts) {
    parts.push_back({{"role", p.role}, {"start", p.start}, {"end", p.end}, {"surface", p.surface}});
  }
  return {{"start", s.span.start},
          {"end", s.span.end},
          {"category", CategoryCode(s.span.category)},
          {"surface", s.span.surface},
          {"rule_id", s.rule_id},
          {"score", s.score},
          {"parts", std::move(parts)}};
}

RecognizedSpan SpanFromJson(const json &record, const std::string &text) {
  if (!record.is_object()) throw DataError("span is not an object");
  auto offset = [&](const char *key) -> size_t {
    auto it = record.find(key);
    if (it == record.end() || !it->is_number_unsigned()) {
      throw DataError(std::string("span \"") + key + "\" missing or not a non-negative integer");
    }
    return it->get<size_t>();
  };
  const size_t start = offset("start");
  const size_t end = offset("end");
  std::string label;
  if (auto it = record.find("category"); it != record.end() && it->is_string()) {
    label = it->get<std::string>();
  } else if (auto it2 = record.find("label"); it2 != record.end() && it2->is_string()) {
    label = it2->get<std::string>();
  }
  const auto category = ParseCategory(label);
  if (!category) throw DataError("span has no category C1..C10");
  RecognizedSpan s;
  s.span = MakeSpan(text, start, end, *category);
  if (auto it = record.find("surface"); it != record.end() && it->is_string() &&
                                        it->get<std::string>() != s.span.surface) {
    throw DataError("span surface \"" + it->get<std::string>() + "\" does not match the text \"" +
                    s.span.surface + "\"");
  }
  s.rule_id = record.value("rule_id", std::string("input"));
  if (auto it = record.find("score"); it != record.end() && it->is_number()) s.score = it->get<double>();
  if (auto it = record.find("parts"); it != record.end() && it->is_array()) {
    const Utf8Text utf(text);
    for (const json &p : *it) {
      SpanPart part;
      part.role = p.value("role", std::string());
      part.start = p.value("start", size_t{0});
      part.end = p.value("end", size_t{0});
      if (part.role.empty() || part.start >= part.end || part.end > utf.size()) {
        throw DataError("bad span part");
      }
      part.surface = utf.substr(part.start, part.end);
      s.parts.push_back(std::move(part));
    }
  }
  return s;
}

}  // namespace geoparse
