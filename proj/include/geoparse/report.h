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


#ifndef GEOPARSE_REPORT_H_
#define GEOPARSE_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoparse/evaluator.h"

namespace geoparse {

enum class ReportFormat { kJson, kCsv, kMarkdown };

std::optional<ReportFormat> ParseReportFormat(std::string_view name);

// Rounds half-up to three decimals using exact integer arithmetic, so 0.5405
// becomes "0.541" regardless of binary floating point.
std::string FormatThreeDecimals(const Fraction &value);
// "n/a" for undefined values.
std::string FormatThreeDecimals(const std::optional<Fraction> &value);

struct SystemResult {
  std::string system;
  Evaluation evaluation;
};

// JSON keeps full precision and the exact fractions. CSV has one row per
// system plus one per (system, category). Markdown renders a precision /
// recall / F table and a per-category accuracy table; categories that no
// system could be scored on are left out.
std::string RenderReport(const std::vector<SystemResult> &systems, ReportFormat format);

}  // namespace geoparse

#endif  // GEOPARSE_REPORT_H_
