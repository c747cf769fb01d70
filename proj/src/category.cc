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

#include "geoparse/category.h"

namespace geoparse {

std::string CategoryCode(Category c) {
  return "C" + std::to_string(CategoryNumber(c));
}

std::string_view CategoryName(Category c) {
  switch (c) {
    case Category::kC1: return "house number address";
    case Category::kC2: return "street name";
    case Category::kC3: return "highway";
    case Category::kC4: return "highway exit";
    case Category::kC5: return "intersection";
    case Category::kC6: return "natural feature";
    case Category::kC7: return "other human-made feature";
    case Category::kC8: return "local organization";
    case Category::kC9: return "administrative unit";
    case Category::kC10: return "multiple areas";
  }
  return "unknown";
}

std::optional<Category> ParseCategory(std::string_view code) {
  if (code.size() < 2 || code.size() > 3) return std::nullopt;
  if (code[0] != 'C' && code[0] != 'c') return std::nullopt;
  int n = 0;
  for (size_t i = 1; i < code.size(); ++i) {
    if (code[i] < '0' || code[i] > '9') return std::nullopt;
    n = n * 10 + (code[i] - '0');
  }
  if (code[1] == '0' || n < 1 || n > 10) return std::nullopt;
  return static_cast<Category>(n);
}

int CategoryPrecedence(Category c) {
  switch (c) {
    case Category::kC1: return 0;
    case Category::kC5: return 1;
    case Category::kC4: return 2;
    case Category::kC3: return 3;
    case Category::kC10: return 4;
    case Category::kC6: return 5;
    case Category::kC7: return 6;
    case Category::kC8: return 7;
    case Category::kC9: return 8;
    case Category::kC2: return 9;
  }
  return 10;
}

}  // namespace geoparse
