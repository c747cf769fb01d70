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


#include <cmath>

#include "doctest.h"
#include "geoparse/errors.h"
#include "geoparse/geometry.h"
#include "geoparse/wkt.h"

using namespace geoparse;

TEST_SUITE("geometry") {
  TEST_CASE("segment crossing") {
    auto hits = SegmentIntersections({0, 0}, {2, 2}, {0, 2}, {2, 0});
    REQUIRE(hits.size() == 1);
    CHECK(NearlyEqual(hits[0], {1, 1}));
    CHECK(SegmentIntersections({0, 0}, {1, 0}, {0, 1}, {1, 1}).empty());
    CHECK(SegmentsIntersect({0, 0}, {1, 1}, {1, 1}, {2, 0}));
  }

  TEST_CASE("collinear overlap reports the shared endpoints") {
    auto hits = SegmentIntersections({0, 0}, {2, 0}, {1, 0}, {3, 0});
    REQUIRE(hits.size() == 2);
    CHECK(NearlyEqual(hits[0], {1, 0}));
    CHECK(NearlyEqual(hits[1], {2, 0}));
  }

  TEST_CASE("polyline crossings are deduplicated at shared vertices") {
    std::vector<Point> a{{0, 0}, {1, 1}, {2, 0}};
    std::vector<Point> b{{1, 0}, {1, 2}};
    auto hits = PolylineIntersections(a, b);
    REQUIRE(hits.size() == 1);
    CHECK(NearlyEqual(hits[0], {1, 1}));
  }

  TEST_CASE("arc length and interpolation") {
    std::vector<Point> line{{0, 0}, {3, 0}, {3, 4}};
    CHECK(ArcLength(line) == doctest::Approx(7.0));
    CHECK(NearlyEqual(PointAtLength(line, 5.0), {3, 2}));
    CHECK(NearlyEqual(PointAtLength(line, -1.0), {0, 0}));
    CHECK(NearlyEqual(PointAtLength(line, 99.0), {3, 4}));
    CHECK(ProjectOntoLine(line, {4, 1}) == doctest::Approx(4.0));
    auto sub = SubLine(line, 2.0, 5.0);
    REQUIRE(sub.size() == 3);
    CHECK(NearlyEqual(sub.front(), {2, 0}));
    CHECK(NearlyEqual(sub[1], {3, 0}));
    CHECK(NearlyEqual(sub.back(), {3, 2}));
  }

  TEST_CASE("hull and point in polygon") {
    std::vector<Point> pts{{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 0.5}};
    auto hull = ConvexHull(pts);
    REQUIRE(hull.size() == 5);  // closed ring of four corners
    CHECK(hull.front() == hull.back());
    for (const auto &p : pts) CHECK(PointInPolygon(p, hull));
    CHECK_FALSE(PointInPolygon({3, 1}, hull));
    CHECK_FALSE(Footprint::MakePolygon(hull).Validate());
  }

  TEST_CASE("bounding boxes") {
    BoundingBox box{-1, -1, 1, 1};
    CHECK(box.contains({0, 0}));
    CHECK(box.contains({1, 1}));
    CHECK_FALSE(box.contains({1.5, 0}));
    CHECK(box.intersects({0.5, 0.5, 3, 3}));
    CHECK_FALSE(box.intersects({2, 2, 3, 3}));
    CHECK(BoundingBox{0, 0, 0, 1}.degenerate());
    CHECK(FootprintIntersectsBox(Footprint::MakePolyline({{-5, 0}, {5, 0}}), box));
    CHECK_FALSE(FootprintIntersectsBox(Footprint::MakePoint({4, 4}), box));
  }

  TEST_CASE("validation") {
    CHECK(Footprint::MakePolyline({{0, 0}}).Validate());
    CHECK(Footprint::MakePolyline({{0, 0}, {0, 0}}).Validate());
    CHECK(Footprint::MakePolygon({{0, 0}, {1, 0}, {2, 0}, {0, 0}}).Validate());
    CHECK(Footprint::MakePoint({200, 0}).Validate());
    CHECK_FALSE(Footprint::MakePoint({-95.3, 29.7}).Validate());
  }
}

TEST_SUITE("wkt") {
  TEST_CASE("round trip") {
    for (const char *text : {"POINT (-95.385 29.76)", "LINESTRING (-95.4 29.7, -95.3 29.8)",
                             "POLYGON ((0 0, 1 0, 1 1, 0 0))"}) {
      INFO(text);
      CHECK(FormatWkt(ParseWkt(text)) == text);
    }
  }

  TEST_CASE("lenient spacing and case") {
    auto fp = ParseWkt("  linestring(1 2,3 4) ");
    CHECK(fp.kind() == FootprintKind::kPolyline);
    CHECK(fp.coordinates().size() == 2);
  }

  TEST_CASE("rejects malformed input") {
    CHECK_THROWS_AS(ParseWkt(""), DataError);
    CHECK_THROWS_AS(ParseWkt("POINT (1)"), DataError);
    CHECK_THROWS_AS(ParseWkt("POINT (1 2) x"), DataError);
    CHECK_THROWS_AS(ParseWkt("MULTIPOINT ((1 2))"), DataError);
    CHECK_THROWS_AS(ParseWkt("POLYGON ((0 0, 1 0, 1 1, 0 0), (0 0, 1 0, 1 1, 0 0))"), DataError);
    CHECK_THROWS_AS(ParseWkt("POINT (nan 1)"), DataError);
  }

  TEST_CASE("coordinates keep full precision") {
    const double v = 0.1 + 0.2;
    CHECK(std::stod(FormatCoordinate(v)) == v);
  }
}
