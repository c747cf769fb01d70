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


#include "doctest.h"
#include "geoparse/errors.h"
#include "geoparse/geojson.h"

using namespace geoparse;
using nlohmann::json;

TEST_SUITE("geojson") {
  TEST_CASE("geometry round trip") {
    const std::vector<Footprint> shapes{
        Footprint::MakePoint({-95.385, 29.76}),
        Footprint::MakePolyline({{-95.4, 29.76}, {-95.37, 29.76}}),
        Footprint::MakePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 0}}),
    };
    for (const auto &fp : shapes) CHECK(GeometryFromGeoJson(GeometryToGeoJson(fp)) == fp);
    CHECK(GeometryToGeoJson(shapes[0]) == json::parse(R"({"type":"Point","coordinates":[-95.385,29.76]})"));
    CHECK(GeometryToGeoJson(shapes[2])["coordinates"].size() == 1);
  }

  TEST_CASE("rejects unsupported input") {
    CHECK_THROWS_AS(GeometryFromGeoJson(json::parse(R"({"type":"MultiPolygon","coordinates":[]})")), DataError);
    CHECK_THROWS_AS(GeometryFromGeoJson(json::parse(R"({"type":"Point","coordinates":[1]})")), DataError);
    CHECK_THROWS_AS(GeometryFromGeoJson(json::parse(R"({"type":7,"coordinates":[1,2]})")), DataError);
    CHECK_THROWS_AS(GeometryFromGeoJson(json::parse(R"({"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]],[]]})")),
                    DataError);
  }

  TEST_CASE("feature collection properties") {
    TweetResolution res;
    res.tweet_id = "t1";
    ResolvedFeature f;
    f.start = 3;
    f.end = 10;
    f.surface = "I-45";
    f.location.geometry = Footprint::MakePoint({1, 2});
    f.location.crossings = {{1, 2}, {3, 4}};
    f.location.category = Category::kC5;
    f.location.method = ResolutionMethod::kLineIntersection;
    f.location.confidence = 0.9;
    f.location.sources = {"a", "b"};
    f.location.warnings = {"two crossings"};
    res.features.push_back(f);
    const json fc = FeatureCollection(res);
    CHECK(fc["type"] == "FeatureCollection");
    REQUIRE(fc["features"].size() == 1);
    const json &feature = fc["features"][0];
    CHECK(feature["geometry"]["type"] == "MultiPoint");
    CHECK(feature["properties"]["primary"] == json::array({1.0, 2.0}));
    CHECK(feature["properties"]["category"] == "C5");
    CHECK(feature["properties"]["method"] == "line_intersection");
    CHECK(feature["properties"]["tweet_id"] == "t1");
    CHECK(feature["properties"]["start"] == 3);
    CHECK(feature["properties"]["warnings"].size() == 1);
    CHECK_FALSE(feature["properties"].contains("unresolved"));
  }

  TEST_CASE("empty resolution") {
    TweetResolution res;
    CHECK(FeatureCollection(res)["features"].empty());
  }
}
