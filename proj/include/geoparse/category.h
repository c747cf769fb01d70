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

#ifndef GEOPARSE_CATEGORY_H_
#define GEOPARSE_CATEGORY_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace geoparse {

// The ten kinds of location descriptions found in disaster tweets.
enum class Category {
  kC1 = 1,   // house number address
  kC2 = 2,   // street name
  kC3 = 3,   // highway
  kC4 = 4,   // highway exit
  kC5 = 5,   // road or river intersection
  kC6 = 6,   // natural feature
  kC7 = 7,   // other human-made feature
  kC8 = 8,   // local organization
  kC9 = 9,   // administrative unit
  kC10 = 10  // multiple areas
};

inline constexpr std::array<Category, 10> kAllCategories = {
    Category::kC1, Category::kC2, Category::kC3, Category::kC4, Category::kC5,
    Category::kC6, Category::kC7, Category::kC8, Category::kC9, Category::kC10};

inline int CategoryNumber(Category c) { return static_cast<int>(c); }

// "C1".."C10".
std::string CategoryCode(Category c);
std::string_view CategoryName(Category c);
// Accepts "C3" or "c3".
std::optional<Category> ParseCategory(std::string_view code);

// Rank used to break ties between equally long overlapping matches; lower
// wins. C1 > C5 > C4 > C3 > C10 > C6/C7/C8 > C9 > C2.
int CategoryPrecedence(Category c);

}  // namespace geoparse

#endif  // GEOPARSE_CATEGORY_H_
