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

#include "geoparse/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geoparse {

namespace {

double Cross(double ax, double ay, double bx, double by) {
  return ax * by - ay * bx;
}

double Cross(const Point &o, const Point &a, const Point &b) {
  return Cross(a.lon - o.lon, a.lat - o.lat, b.lon - o.lon, b.lat - o.lat);
}

bool LexLess(const Point &a, const Point &b) {
  return a.lon < b.lon || (a.lon == b.lon && a.lat < b.lat);
}

void AddUnique(std::vector<Point> *out, const Point &p) {
  for (const Point &q : *out) {
    if (NearlyEqual(p, q)) return;
  }
  out->push_back(p);
}

// Parameter tolerance for segment ends.
constexpr double kParamEps = 1e-12;

bool OnSegment(const Point &p, const Point &a, const Point &b) {
  const double len = Distance(a, b);
  if (len == 0.0) return NearlyEqual(p, a);
  if (std::abs(Cross(a, b, p)) / len > kGeometryTolerance) return false;
  return p.lon >= std::min(a.lon, b.lon) - kGeometryTolerance &&
         p.lon <= std::max(a.lon, b.lon) + kGeometryTolerance &&
         p.lat >= std::min(a.lat, b.lat) - kGeometryTolerance &&
         p.lat <= std::max(a.lat, b.lat) + kGeometryTolerance;
}

double SignedArea(const std::vector<Point> &ring) {
  double a = 0.0;
  for (size_t i = 0; i + 1 < ring.size(); ++i) {
    a += Cross(ring[i].lon, ring[i].lat, ring[i + 1].lon, ring[i + 1].lat);
  }
  return a / 2.0;
}

}  // namespace

bool NearlyEqual(const Point &a, const Point &b, double tol) {
  return std::abs(a.lon - b.lon) <= tol && std::abs(a.lat - b.lat) <= tol;
}

double Distance(const Point &a, const Point &b) {
  return std::hypot(a.lon - b.lon, a.lat - b.lat);
}

bool ValidCoordinate(const Point &p) {
  return std::isfinite(p.lon) && std::isfinite(p.lat) && p.lon >= -180.0 &&
         p.lon <= 180.0 && p.lat >= -90.0 && p.lat <= 90.0;
}

bool BoundingBox::contains(const Point &p) const {
  return p.lon >= min_lon - kGeometryTolerance &&
         p.lon <= max_lon + kGeometryTolerance &&
         p.lat >= min_lat - kGeometryTolerance &&
         p.lat <= max_lat + kGeometryTolerance;
}

bool BoundingBox::intersects(const BoundingBox &o) const {
  return !(o.min_lon > max_lon + kGeometryTolerance ||
           o.max_lon < min_lon - kGeometryTolerance ||
           o.min_lat > max_lat + kGeometryTolerance ||
           o.max_lat < min_lat - kGeometryTolerance);
}

Point BoundingBox::center() const {
  return {(min_lon + max_lon) / 2.0, (min_lat + max_lat) / 2.0};
}

std::vector<Point> BoundingBox::ring() const {
  return {{min_lon, min_lat},
          {max_lon, min_lat},
          {max_lon, max_lat},
          {min_lon, max_lat},
          {min_lon, min_lat}};
}

BoundingBox BoundingBox::Of(const std::vector<Point> &points) {
  BoundingBox b;
  if (points.empty()) return b;
  b.min_lon = b.max_lon = points[0].lon;
  b.min_lat = b.max_lat = points[0].lat;
  for (const Point &p : points) {
    b.min_lon = std::min(b.min_lon, p.lon);
    b.max_lon = std::max(b.max_lon, p.lon);
    b.min_lat = std::min(b.min_lat, p.lat);
    b.max_lat = std::max(b.max_lat, p.lat);
  }
  return b;
}

std::string FootprintKindName(FootprintKind kind) {
  switch (kind) {
    case FootprintKind::kPoint: return "point";
    case FootprintKind::kPolyline: return "polyline";
    case FootprintKind::kPolygon: return "polygon";
  }
  return "unknown";
}

std::optional<std::string> Footprint::Validate() const {
  for (const Point &p : coordinates_) {
    if (!ValidCoordinate(p)) return "coordinate out of range";
  }
  switch (kind_) {
    case FootprintKind::kPoint:
      if (coordinates_.size() != 1) return "point needs exactly one coordinate";
      return std::nullopt;
    case FootprintKind::kPolyline:
      if (coordinates_.size() < 2) return "polyline needs at least two coordinates";
      for (size_t i = 0; i + 1 < coordinates_.size(); ++i) {
        if (coordinates_[i] == coordinates_[i + 1]) return "zero-length segment";
      }
      return std::nullopt;
    case FootprintKind::kPolygon: {
      if (coordinates_.size() < 4) return "polygon ring needs at least four coordinates";
      if (!(coordinates_.front() == coordinates_.back())) return "ring not closed";
      const size_t edges = coordinates_.size() - 1;
      for (size_t i = 0; i < edges; ++i) {
        if (coordinates_[i] == coordinates_[i + 1]) return "zero-length edge";
      }
      if (std::abs(SignedArea(coordinates_)) <= 0.0) return "ring has zero area";
      for (size_t i = 0; i < edges; ++i) {
        for (size_t j = i + 1; j < edges; ++j) {
          const Point &a1 = coordinates_[i];
          const Point &a2 = coordinates_[i + 1];
          const Point &b1 = coordinates_[j];
          const Point &b2 = coordinates_[j + 1];
          const bool adjacent = (j == i + 1) || (i == 0 && j == edges - 1);
          const auto hits = SegmentIntersections(a1, a2, b1, b2);
          if (!adjacent) {
            if (!hits.empty()) return "ring self-intersects";
          } else if (hits.size() > 1) {
            return "ring self-intersects";
          }
        }
      }
      return std::nullopt;
    }
  }
  return "unknown footprint kind";
}

std::vector<Point> SegmentIntersections(const Point &a1, const Point &a2,
                                        const Point &b1, const Point &b2) {
  std::vector<Point> out;
  const double rx = a2.lon - a1.lon;
  const double ry = a2.lat - a1.lat;
  const double sx = b2.lon - b1.lon;
  const double sy = b2.lat - b1.lat;
  const double qx = b1.lon - a1.lon;
  const double qy = b1.lat - a1.lat;
  const double rr = rx * rx + ry * ry;
  const double ss = sx * sx + sy * sy;

  if (rr == 0.0 || ss == 0.0) {
    if (rr == 0.0 && ss == 0.0) {
      if (NearlyEqual(a1, b1)) out.push_back(a1);
    } else if (rr == 0.0) {
      if (OnSegment(a1, b1, b2)) out.push_back(a1);
    } else if (OnSegment(b1, a1, a2)) {
      out.push_back(b1);
    }
    return out;
  }

  const double denom = Cross(rx, ry, sx, sy);
  const double scale = std::sqrt(rr * ss);
  if (std::abs(denom) > 1e-14 * scale) {
    const double t = Cross(qx, qy, sx, sy) / denom;
    const double u = Cross(qx, qy, rx, ry) / denom;
    if (t >= -kParamEps && t <= 1.0 + kParamEps && u >= -kParamEps &&
        u <= 1.0 + kParamEps) {
      const double tc = std::clamp(t, 0.0, 1.0);
      // Snap to shared endpoints so touching lines report the exact vertex.
      Point p{a1.lon + tc * rx, a1.lat + tc * ry};
      for (const Point *v : {&a1, &a2, &b1, &b2}) {
        if (NearlyEqual(p, *v)) p = *v;
      }
      out.push_back(p);
    }
    return out;
  }

  // Parallel: only collinear segments can meet.
  if (std::abs(Cross(qx, qy, rx, ry)) / std::sqrt(rr) > kGeometryTolerance) {
    return out;
  }
  const double t0 = (qx * rx + qy * ry) / rr;
  const double t1 = ((b2.lon - a1.lon) * rx + (b2.lat - a1.lat) * ry) / rr;
  const double lo = std::max(0.0, std::min(t0, t1));
  const double hi = std::min(1.0, std::max(t0, t1));
  if (lo > hi + kParamEps) return out;
  auto at = [&](double t) -> Point {
    if (t <= 0.0) return a1;
    if (t >= 1.0) return a2;
    if (std::abs(t - t0) <= kParamEps) return b1;
    if (std::abs(t - t1) <= kParamEps) return b2;
    return {a1.lon + t * rx, a1.lat + t * ry};
  };
  AddUnique(&out, at(lo));
  AddUnique(&out, at(std::max(lo, hi)));
  return out;
}

bool SegmentsIntersect(const Point &a1, const Point &a2, const Point &b1,
                       const Point &b2) {
  return !SegmentIntersections(a1, a2, b1, b2).empty();
}

std::vector<Point> PolylineIntersections(const std::vector<Point> &a,
                                         const std::vector<Point> &b) {
  std::vector<Point> out;
  if (a.size() < 2 || b.size() < 2) return out;
  const BoundingBox ba = BoundingBox::Of(a);
  const BoundingBox bb = BoundingBox::Of(b);
  if (!ba.intersects(bb)) return out;
  for (size_t i = 0; i + 1 < a.size(); ++i) {
    const BoundingBox sa = BoundingBox::Of({a[i], a[i + 1]});
    if (!sa.intersects(bb)) continue;
    for (size_t j = 0; j + 1 < b.size(); ++j) {
      const BoundingBox sb = BoundingBox::Of({b[j], b[j + 1]});
      if (!sa.intersects(sb)) continue;
      for (const Point &p : SegmentIntersections(a[i], a[i + 1], b[j], b[j + 1])) {
        AddUnique(&out, p);
      }
    }
  }
  std::sort(out.begin(), out.end(), LexLess);
  return out;
}

double ArcLength(const std::vector<Point> &line) {
  double total = 0.0;
  for (size_t i = 0; i + 1 < line.size(); ++i) total += Distance(line[i], line[i + 1]);
  return total;
}

Point PointAtLength(const std::vector<Point> &line, double s) {
  if (line.empty()) return {};
  if (s <= 0.0) return line.front();
  double walked = 0.0;
  for (size_t i = 0; i + 1 < line.size(); ++i) {
    const double seg = Distance(line[i], line[i + 1]);
    if (walked + seg >= s) {
      const double f = seg > 0.0 ? (s - walked) / seg : 0.0;
      if (f >= 1.0) return line[i + 1];
      return {line[i].lon + f * (line[i + 1].lon - line[i].lon),
              line[i].lat + f * (line[i + 1].lat - line[i].lat)};
    }
    walked += seg;
  }
  return line.back();
}

double ProjectOntoLine(const std::vector<Point> &line, const Point &p) {
  double best_dist = std::numeric_limits<double>::infinity();
  double best_pos = 0.0;
  double walked = 0.0;
  for (size_t i = 0; i + 1 < line.size(); ++i) {
    const Point &a = line[i];
    const Point &b = line[i + 1];
    const double dx = b.lon - a.lon;
    const double dy = b.lat - a.lat;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.lon - a.lon) * dx + (p.lat - a.lat) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Point q{a.lon + t * dx, a.lat + t * dy};
    const double d = Distance(p, q);
    if (d < best_dist) {
      best_dist = d;
      best_pos = walked + t * std::sqrt(len2);
    }
    walked += std::sqrt(len2);
  }
  return best_pos;
}

std::vector<Point> SubLine(const std::vector<Point> &line, double s0,
                           double s1) {
  std::vector<Point> out;
  if (line.size() < 2) return out;
  out.push_back(PointAtLength(line, s0));
  double walked = 0.0;
  for (size_t i = 0; i + 1 < line.size(); ++i) {
    walked += Distance(line[i], line[i + 1]);
    if (walked > s0 && walked < s1 && !NearlyEqual(line[i + 1], out.back())) {
      out.push_back(line[i + 1]);
    }
  }
  const Point end = PointAtLength(line, s1);
  if (!NearlyEqual(end, out.back())) out.push_back(end);
  return out;
}

bool PointInPolygon(const Point &p, const std::vector<Point> &ring) {
  if (ring.size() < 4) return false;
  for (size_t i = 0; i + 1 < ring.size(); ++i) {
    if (OnSegment(p, ring[i], ring[i + 1])) return true;
  }
  bool inside = false;
  for (size_t i = 0, j = ring.size() - 2; i + 1 < ring.size(); j = i++) {
    const Point &a = ring[i];
    const Point &b = ring[j];
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      const double x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

std::vector<Point> ConvexHull(std::vector<Point> points) {
  std::sort(points.begin(), points.end(), LexLess);
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Point &a, const Point &b) { return NearlyEqual(a, b); }),
               points.end());
  if (points.size() < 3) return points;
  std::vector<Point> hull(2 * points.size());
  size_t k = 0;
  for (const Point &p : points) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
    const Point &p = points[i];
    while (k >= t && Cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k);  // last point repeats the first
  if (hull.size() < 4) {
    // All input points collinear: report the two extremes.
    return {points.front(), points.back()};
  }
  return hull;
}

std::vector<Point> ClipRingToBox(const std::vector<Point> &ring,
                                 const BoundingBox &box) {
  if (ring.size() < 4) return {};
  std::vector<Point> poly(ring.begin(), ring.end() - 1);
  enum Edge { kLeft, kRight, kBottom, kTop };
  auto inside = [&](const Point &p, Edge e) {
    switch (e) {
      case kLeft: return p.lon >= box.min_lon;
      case kRight: return p.lon <= box.max_lon;
      case kBottom: return p.lat >= box.min_lat;
      case kTop: return p.lat <= box.max_lat;
    }
    return false;
  };
  auto intersect = [&](const Point &a, const Point &b, Edge e) -> Point {
    double t = 0.0;
    switch (e) {
      case kLeft: t = (box.min_lon - a.lon) / (b.lon - a.lon); break;
      case kRight: t = (box.max_lon - a.lon) / (b.lon - a.lon); break;
      case kBottom: t = (box.min_lat - a.lat) / (b.lat - a.lat); break;
      case kTop: t = (box.max_lat - a.lat) / (b.lat - a.lat); break;
    }
    Point p{a.lon + t * (b.lon - a.lon), a.lat + t * (b.lat - a.lat)};
    if (e == kLeft) p.lon = box.min_lon;
    if (e == kRight) p.lon = box.max_lon;
    if (e == kBottom) p.lat = box.min_lat;
    if (e == kTop) p.lat = box.max_lat;
    return p;
  };
  for (Edge e : {kLeft, kRight, kBottom, kTop}) {
    std::vector<Point> next;
    for (size_t i = 0; i < poly.size(); ++i) {
      const Point &cur = poly[i];
      const Point &prev = poly[(i + poly.size() - 1) % poly.size()];
      const bool cin = inside(cur, e);
      const bool pin = inside(prev, e);
      if (cin) {
        if (!pin) next.push_back(intersect(prev, cur, e));
        next.push_back(cur);
      } else if (pin) {
        next.push_back(intersect(prev, cur, e));
      }
    }
    poly = std::move(next);
    if (poly.empty()) return {};
  }
  std::vector<Point> out;
  for (const Point &p : poly) {
    if (out.empty() || !NearlyEqual(out.back(), p)) out.push_back(p);
  }
  while (out.size() > 1 && NearlyEqual(out.front(), out.back())) out.pop_back();
  if (out.size() < 3) return {};
  out.push_back(out.front());
  if (std::abs(SignedArea(out)) <= 0.0) return {};
  return out;
}

bool FootprintIntersectsBox(const Footprint &fp, const BoundingBox &box) {
  const auto &c = fp.coordinates();
  if (c.empty()) return false;
  if (!fp.bounds().intersects(box)) return false;
  for (const Point &p : c) {
    if (box.contains(p)) return true;
  }
  if (fp.kind() == FootprintKind::kPoint) return false;
  const auto edges = box.ring();
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    for (size_t j = 0; j + 1 < edges.size(); ++j) {
      if (SegmentsIntersect(c[i], c[i + 1], edges[j], edges[j + 1])) return true;
    }
  }
  if (fp.kind() == FootprintKind::kPolygon) {
    return PointInPolygon(box.center(), c);
  }
  return false;
}

Point RepresentativePoint(const Footprint &fp) {
  const auto &c = fp.coordinates();
  if (c.empty()) return {};
  switch (fp.kind()) {
    case FootprintKind::kPoint:
      return c[0];
    case FootprintKind::kPolyline:
      return PointAtLength(c, ArcLength(c) / 2.0);
    case FootprintKind::kPolygon: {
      double x = 0.0;
      double y = 0.0;
      const size_t n = c.size() - 1;
      for (size_t i = 0; i < n; ++i) {
        x += c[i].lon;
        y += c[i].lat;
      }
      return {x / static_cast<double>(n), y / static_cast<double>(n)};
    }
  }
  return c[0];
}

}  // namespace geoparse
