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


#ifndef GEOPARSE_WKT_H_
#define GEOPARSE_WKT_H_

#include <string>
#include <string_view>

#include "geoparse/geometry.h"

namespace geoparse {

// POINT (lon lat), LINESTRING (lon lat, ...) and single-ring POLYGON
// ((lon lat, ...)). Keywords are case-insensitive. Throws DataError on
// malformed text or other geometry types; does not validate the footprint.
Footprint ParseWkt(std::string_view text);

// Shortest round-tripping decimal form of every coordinate.
std::string FormatWkt(const Footprint &fp);

std::string FormatCoordinate(double value);

}  // namespace geoparse

#endif  // GEOPARSE_WKT_H_
