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


#include "geoparse/geojson.h"

#include "geoparse/errors.h"

namespace geoparse {

using nlohmann::json;

namespace {

json Position(const Point &p) { return json::array({p.lon, p.lat}); }

json Positions(const std::vector<Point> &pts) {
  json out = json::array();
  for (const Point &p : pts) out.push_back(Position(p));
  return out;
}

Point ReadPosition(const json &j) {
  if (!j.is_array() || j.size() < 2 || !j[0].is_number() || !j[1].is_number()) {
    throw DataError("bad GeoJSON position");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point> ReadPositions(const json &j) {
  if (!j.is_array()) throw DataError("bad GeoJSON coordinates");
  std::vector<Point> out;
  for (const json &p : j) out.push_back(ReadPosition(p));
  return out;
}

}  // namespace

json GeometryToGeoJson(const Footprint &fp) {
  switch (fp.kind()) {
    case FootprintKind::kPoint:
      return {{"type", "Point"}, {"coordinates", Position(fp.coordinates().front())}};
    case FootprintKind::kPolyline:
      return {{"type", "LineString"}, {"coordinates", Positions(fp.coordinates())}};
    case FootprintKind::kPolygon:
      return {{"type", "Polygon"}, {"coordinates", json::array({Positions(fp.coordinates())})}};
  }
  return nullptr;
}

json MultiPointToGeoJson(const std::vector<Point> &points) {
  return {{"type", "MultiPoint"}, {"coordinates", Positions(points)}};
}

Footprint GeometryFromGeoJson(const json &g) {
  if (!g.is_object() || !g.contains("type") || !g["type"].is_string() || !g.contains("coordinates")) {
    throw DataError("GeoJSON geometry needs type and coordinates");
  }
  const std::string type = g["type"].get<std::string>();
  const json &c = g["coordinates"];
  if (type == "Point") return Footprint::MakePoint(ReadPosition(c));
  if (type == "LineString") return Footprint::MakePolyline(ReadPositions(c));
  if (type == "Polygon") {
    if (!c.is_array() || c.size() != 1) throw DataError("only single-ring polygons are supported");
    return Footprint::MakePolygon(ReadPositions(c[0]));
  }
  throw DataError("unsupported GeoJSON geometry " + type);
}

json FeatureCollection(const TweetResolution &resolution) {
  json features = json::array();
  for (const ResolvedFeature &f : resolution.features) {
    const ResolvedLocation &loc = f.location;
    json props = {{"tweet_id", resolution.tweet_id},
                  {"start", f.start},
                  {"end", f.end},
                  {"category", CategoryCode(loc.category)},
                  {"method", MethodName(loc.method)},
                  {"plan", PlanName(loc.plan)},
                  {"confidence", loc.confidence},
                  {"sources", loc.sources},
                  {"surface", f.surface}};
    if (!loc.warnings.empty()) props["warnings"] = loc.warnings;
    if (!loc.unresolved.empty()) props["unresolved"] = loc.unresolved;
    json geometry;
    if (loc.crossings.size() > 1) {
      geometry = MultiPointToGeoJson(loc.crossings);
      props["primary"] = Position(loc.geometry.coordinates().front());
    } else {
      geometry = GeometryToGeoJson(loc.geometry);
    }
    features.push_back({{"type", "Feature"}, {"geometry", std::move(geometry)}, {"properties", std::move(props)}});
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

}  // namespace geoparse
