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


#ifndef GEOPARSE_CLI_H_
#define GEOPARSE_CLI_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoparse/geometry.h"

namespace geoparse {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitIo = 3;

// "min_lon,min_lat,max_lon,max_lat". nullopt when the text is not four
// numbers; ordering is checked later, by the gazetteer.
std::optional<BoundingBox> ParseExtent(std::string_view text);

// Runs the command line `args` (without the program name). Data goes to
// `out` unless an output path is given, diagnostics to `err`. Returns the
// process exit status.
int RunCli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

}  // namespace geoparse

#endif  // GEOPARSE_CLI_H_
