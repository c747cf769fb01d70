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

#ifndef GEOPARSE_GEOMETRY_H_
#define GEOPARSE_GEOMETRY_H_

#include <optional>
#include <string>
#include <vector>

namespace geoparse {

// Planar geometry on WGS84 lon/lat degrees. Metropolitan extents are small
// enough that planar error stays below street-level precision.
inline constexpr double kGeometryTolerance = 1e-9;

struct Point {
  double lon = 0.0;
  double lat = 0.0;

  friend bool operator==(const Point &a, const Point &b) = default;
};

bool NearlyEqual(const Point &a, const Point &b,
                 double tol = kGeometryTolerance);
double Distance(const Point &a, const Point &b);
bool ValidCoordinate(const Point &p);

struct BoundingBox {
  double min_lon = 0.0;
  double min_lat = 0.0;
  double max_lon = 0.0;
  double max_lat = 0.0;

  double width() const { return max_lon - min_lon; }
  double height() const { return max_lat - min_lat; }
  double area() const { return width() * height(); }
  // Zero or negative area.
  bool degenerate() const { return !(width() > 0.0 && height() > 0.0); }
  bool contains(const Point &p) const;
  bool intersects(const BoundingBox &other) const;
  Point center() const;
  std::vector<Point> ring() const;  // closed, counter-clockwise

  static BoundingBox Of(const std::vector<Point> &points);
};

enum class FootprintKind { kPoint, kPolyline, kPolygon };

std::string FootprintKindName(FootprintKind kind);

// A feature geometry. Point: one coordinate. Polyline: at least two, no
// zero-length segments. Polygon: a single closed ring of at least four
// coordinates (first == last) that does not cross itself.
class Footprint {
 public:
  Footprint() = default;
  Footprint(FootprintKind kind, std::vector<Point> coordinates)
      : kind_(kind), coordinates_(std::move(coordinates)) {}

  static Footprint MakePoint(Point p) { return {FootprintKind::kPoint, {p}}; }
  static Footprint MakePolyline(std::vector<Point> pts) {
    return {FootprintKind::kPolyline, std::move(pts)};
  }
  static Footprint MakePolygon(std::vector<Point> ring) {
    return {FootprintKind::kPolygon, std::move(ring)};
  }

  FootprintKind kind() const { return kind_; }
  const std::vector<Point> &coordinates() const { return coordinates_; }
  BoundingBox bounds() const { return BoundingBox::Of(coordinates_); }

  // Empty when valid; otherwise the first violated invariant.
  std::optional<std::string> Validate() const;

  friend bool operator==(const Footprint &a, const Footprint &b) = default;

 private:
  FootprintKind kind_ = FootprintKind::kPoint;
  std::vector<Point> coordinates_;
};

// Crossing points of two closed segments. Collinear overlaps contribute the
// endpoints of the shared part. Results are deduplicated.
std::vector<Point> SegmentIntersections(const Point &a1, const Point &a2,
                                        const Point &b1, const Point &b2);

bool SegmentsIntersect(const Point &a1, const Point &a2, const Point &b1,
                       const Point &b2);

// All crossings of two polylines, deduplicated within tolerance and sorted
// lexicographically by (lon, lat). Shared endpoints count as crossings.
std::vector<Point> PolylineIntersections(const std::vector<Point> &a,
                                         const std::vector<Point> &b);

double ArcLength(const std::vector<Point> &line);
// Point at arc length s from the start, clamped to [0, length].
Point PointAtLength(const std::vector<Point> &line, double s);
// Arc-length position of the point on the line closest to p.
double ProjectOntoLine(const std::vector<Point> &line, const Point &p);
// Portion of the line between arc lengths s0 and s1 (s0 < s1).
std::vector<Point> SubLine(const std::vector<Point> &line, double s0,
                           double s1);

// Boundary points count as inside.
bool PointInPolygon(const Point &p, const std::vector<Point> &ring);

// Convex hull as a closed counter-clockwise ring (first == last). Fewer than
// three non-collinear points give the distinct extreme points, unclosed.
std::vector<Point> ConvexHull(std::vector<Point> points);

// Sutherland-Hodgman clip of a closed ring against an axis-aligned box.
// Returns a closed ring, or an empty vector when nothing remains.
std::vector<Point> ClipRingToBox(const std::vector<Point> &ring,
                                 const BoundingBox &box);

bool FootprintIntersectsBox(const Footprint &fp, const BoundingBox &box);

// A point that stands for the footprint: the point itself, the arc-length
// midpoint of a line, the vertex centroid of a polygon ring.
Point RepresentativePoint(const Footprint &fp);

}  // namespace geoparse

#endif  // GEOPARSE_GEOMETRY_H_
