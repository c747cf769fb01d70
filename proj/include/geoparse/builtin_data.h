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

#ifndef GEOPARSE_BUILTIN_DATA_H_
#define GEOPARSE_BUILTIN_DATA_H_

#include <string_view>

namespace geoparse {

// Contents of data/default.lexicon and data/default.rules, embedded at build
// time so the library works without a data directory.
std::string_view builtin_lexicon_text();
std::string_view builtin_grammar_text();

}  // namespace geoparse

#endif  // GEOPARSE_BUILTIN_DATA_H_
