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


#ifndef GEOPARSE_GEOJSON_H_
#define GEOPARSE_GEOJSON_H_

#include <vector>

#include "geoparse/geometry.h"
#include "geoparse/resolver.h"
#include "json.hpp"

namespace geoparse {

nlohmann::json GeometryToGeoJson(const Footprint &fp);
nlohmann::json MultiPointToGeoJson(const std::vector<Point> &points);

// Point, LineString and single-ring Polygon. Throws DataError otherwise.
Footprint GeometryFromGeoJson(const nlohmann::json &geometry);

// One Feature per resolved span. Properties: tweet_id, start, end, category,
// method, confidence, sources, surface, plus plan and any warnings. An
// intersection with several crossings becomes a MultiPoint whose primary
// crossing is in the "primary" property.
nlohmann::json FeatureCollection(const TweetResolution &resolution);

}  // namespace geoparse

#endif  // GEOPARSE_GEOJSON_H_
