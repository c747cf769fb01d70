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


#include "geoparse/report.h"

#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"

namespace geoparse {

using nlohmann::json;

std::optional<ReportFormat> ParseReportFormat(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string FormatThreeDecimals(const Fraction &value) {
  using u128 = unsigned __int128;
  const u128 scaled = (u128{value.num} * 2000 + value.den) / (u128{value.den} * 2);
  const auto whole = static_cast<uint64_t>(scaled / 1000);
  const auto frac = static_cast<unsigned>(scaled % 1000);
  char buf[8];
  std::snprintf(buf, sizeof buf, "%03u", frac);
  return std::to_string(whole) + "." + buf;
}

std::string FormatThreeDecimals(const std::optional<Fraction> &value) {
  return value ? FormatThreeDecimals(*value) : "n/a";
}

namespace {

std::string FullPrecision(const std::optional<Fraction> &f) {
  if (!f) return "";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, f->value());
  return std::string(buf, res.ptr);
}

json FractionJson(const std::optional<Fraction> &f) {
  if (!f) return nullptr;
  return {{"value", f->value()}, {"numerator", f->num}, {"denominator", f->den}};
}

std::string RenderJson(const std::vector<SystemResult> &systems) {
  json out = json::array();
  for (const SystemResult &s : systems) {
    const MetricsReport &m = s.evaluation.metrics;
    json cats = json::array();
    for (const CategoryAccuracy &c : s.evaluation.categories.rows) {
      cats.push_back({{"category", CategoryCode(c.category)},
                      {"annotated", c.annotated},
                      {"recognized", c.recognized},
                      {"accuracy", FractionJson(c.accuracy)}});
    }
    json skipped = json::array();
    for (Category c : s.evaluation.categories.skipped) skipped.push_back(CategoryCode(c));
    out.push_back({{"system", s.system},
                   {"mode", MatchModeName(m.mode)},
                   {"tp", m.counts.tp},
                   {"fp", m.counts.fp},
                   {"fn", m.counts.fn},
                   {"precision", FractionJson(m.precision)},
                   {"recall", FractionJson(m.recall)},
                   {"f_score", FractionJson(m.f_score)},
                   {"categories", cats},
                   {"skipped_categories", skipped}});
  }
  return json{{"systems", out}}.dump(2) + "\n";
}

std::string RenderCsv(const std::vector<SystemResult> &systems) {
  std::ostringstream out;
  out << "system,mode,category,tp,fp,fn,precision,recall,f_score,annotated,recognized,accuracy\n";
  for (const SystemResult &s : systems) {
    const MetricsReport &m = s.evaluation.metrics;
    out << s.system << ',' << MatchModeName(m.mode) << ",all," << m.counts.tp << ',' << m.counts.fp << ','
        << m.counts.fn << ',' << FullPrecision(m.precision) << ',' << FullPrecision(m.recall) << ','
        << FullPrecision(m.f_score) << ",,,\n";
    for (const CategoryAccuracy &c : s.evaluation.categories.rows) {
      out << s.system << ',' << MatchModeName(m.mode) << ',' << CategoryCode(c.category) << ",,,,,,,"
          << c.annotated << ',' << c.recognized << ',' << FullPrecision(c.accuracy) << '\n';
    }
  }
  return out.str();
}

std::string RenderMarkdown(const std::vector<SystemResult> &systems) {
  std::ostringstream out;
  out << "| System | Mode | TP | FP | FN | Precision | Recall | F-score |\n";
  out << "|---|---|---:|---:|---:|---:|---:|---:|\n";
  for (const SystemResult &s : systems) {
    const MetricsReport &m = s.evaluation.metrics;
    out << "| " << s.system << " | " << MatchModeName(m.mode) << " | " << m.counts.tp << " | " << m.counts.fp
        << " | " << m.counts.fn << " | " << FormatThreeDecimals(m.precision) << " | "
        << FormatThreeDecimals(m.recall) << " | " << FormatThreeDecimals(m.f_score) << " |\n";
  }

  std::set<Category> shown;
  std::set<Category> skipped;
  for (const SystemResult &s : systems) {
    for (const CategoryAccuracy &c : s.evaluation.categories.rows) {
      if (c.accuracy) shown.insert(c.category);
    }
    skipped.insert(s.evaluation.categories.skipped.begin(), s.evaluation.categories.skipped.end());
  }
  std::set<MatchMode> modes;
  for (const SystemResult &s : systems) modes.insert(s.evaluation.metrics.mode);
  out << "\n| Category |";
  for (const SystemResult &s : systems) {
    out << ' ' << s.system;
    if (modes.size() > 1) out << " (" << MatchModeName(s.evaluation.metrics.mode) << ')';
    out << " |";
  }
  out << "\n|---|";
  for (size_t i = 0; i < systems.size(); ++i) out << "---:|";
  out << '\n';
  for (Category c : kAllCategories) {
    if (!shown.count(c)) continue;
    out << "| " << CategoryCode(c) << ' ' << CategoryName(c) << " |";
    for (const SystemResult &s : systems) {
      std::optional<Fraction> acc;
      uint64_t annotated = 0;
      uint64_t recognized = 0;
      for (const CategoryAccuracy &row : s.evaluation.categories.rows) {
        if (row.category == c) {
          acc = row.accuracy;
          annotated = row.annotated;
          recognized = row.recognized;
        }
      }
      out << ' ' << FormatThreeDecimals(acc);
      if (acc) out << " (" << recognized << '/' << annotated << ')';
      out << " |";
    }
    out << '\n';
  }
  if (!skipped.empty()) {
    out << "\nNot scored per category:";
    for (Category c : skipped) out << ' ' << CategoryCode(c);
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string RenderReport(const std::vector<SystemResult> &systems, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      return RenderJson(systems);
    case ReportFormat::kCsv:
      return RenderCsv(systems);
    case ReportFormat::kMarkdown:
      return RenderMarkdown(systems);
  }
  return {};
}

}  // namespace geoparse
