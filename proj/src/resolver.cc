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


#include "geoparse/resolver.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace geoparse {

namespace {

constexpr double kTieTolerance = 1e-12;

double TierQuality(NameTier tier) {
  switch (tier) {
    case NameTier::kPrimary: return 1.0;
    case NameTier::kAlternate: return 0.9;
    case NameTier::kStripped: return 0.8;
  }
  return 0.8;
}

bool AnyEntry(const GazetteerEntry &) { return true; }

bool LineEntry(const GazetteerEntry &e) { return e.footprint.kind() != FootprintKind::kPoint; }

bool StreetEntry(const GazetteerEntry &e) {
  return (e.feature_class == FeatureClass::kStreet || e.feature_class == FeatureClass::kHighway) &&
         e.footprint.kind() == FootprintKind::kPolyline;
}

bool PointEntry(const GazetteerEntry &e) { return e.footprint.kind() == FootprintKind::kPoint; }

bool AreaEntry(const GazetteerEntry &e) {
  return e.footprint.kind() != FootprintKind::kPolyline && e.feature_class != FeatureClass::kStreet &&
         e.feature_class != FeatureClass::kHighway;
}

bool AdminPolygon(const GazetteerEntry &e) {
  return (e.feature_class == FeatureClass::kAdminUnit || e.feature_class == FeatureClass::kArea) &&
         e.footprint.kind() == FootprintKind::kPolygon;
}

// Line geometry of a footprint: the vertices of a polyline or the ring of a
// polygon.
const std::vector<Point> &LineOf(const Footprint &fp) { return fp.coordinates(); }

GeometryPlanKind DefaultPlan(Category c) {
  switch (c) {
    case Category::kC1:
    case Category::kC4:
    case Category::kC5: return GeometryPlanKind::kPoint;
    case Category::kC2:
    case Category::kC3:
    case Category::kC6: return GeometryPlanKind::kPolyline;
    case Category::kC7:
    case Category::kC8: return GeometryPlanKind::kPointOrPolygon;
    case Category::kC9:
    case Category::kC10: return GeometryPlanKind::kPolygon;
  }
  return GeometryPlanKind::kPoint;
}

// A span's place name without an absorbed state ("Rockport, TX" -> "Rockport").
std::string SpanName(const RecognizedSpan &span) {
  const SpanPart *state = span.part("state");
  if (span.span.category != Category::kC9 || !state || state->start <= span.span.start) {
    return span.span.surface;
  }
  std::string name = Utf8Text(span.span.surface).substr(0, state->start - span.span.start);
  while (!name.empty() && (name.back() == ',' || name.back() == ' ')) name.pop_back();
  return name.empty() ? span.span.surface : name;
}

void RequireInExtent(const Footprint &fp, const ResolutionContext &ctx) {
  if (!FootprintIntersectsBox(fp, ctx.extent)) {
    throw ResolutionError(ResolutionError::Kind::kOutsideExtent, "result lies outside the extent");
  }
}

std::optional<BoundingBox> Quadrant(const BoundingBox &b, const std::string &direction) {
  const Point c = b.center();
  BoundingBox q = b;
  const std::string d = direction;
  const bool north = d.find("north") != std::string::npos;
  const bool south = d.find("south") != std::string::npos;
  const bool east = d.find("east") != std::string::npos;
  const bool west = d.find("west") != std::string::npos;
  if (!north && !south && !east && !west) return std::nullopt;
  if (north) q.min_lat = c.lat;
  if (south) q.max_lat = c.lat;
  if (east) q.min_lon = c.lon;
  if (west) q.max_lon = c.lon;
  return q;
}

}  // namespace

std::string MethodName(ResolutionMethod method) {
  switch (method) {
    case ResolutionMethod::kExactName: return "exact_name";
    case ResolutionMethod::kAddressInterpolation: return "address_interpolation";
    case ResolutionMethod::kLineIntersection: return "line_intersection";
    case ResolutionMethod::kExit: return "exit";
    case ResolutionMethod::kAreaUnion: return "area_union";
    case ResolutionMethod::kFallbackAdmin: return "fallback_admin";
  }
  return "";
}

double MethodFactor(ResolutionMethod method) {
  switch (method) {
    case ResolutionMethod::kExactName: return 1.0;
    case ResolutionMethod::kAddressInterpolation: return 0.9;
    case ResolutionMethod::kLineIntersection: return 0.9;
    case ResolutionMethod::kExit: return 0.8;
    case ResolutionMethod::kAreaUnion: return 0.8;
    case ResolutionMethod::kFallbackAdmin: return 0.5;
  }
  return 0.0;
}

std::string PlanName(GeometryPlanKind kind) {
  switch (kind) {
    case GeometryPlanKind::kPoint: return "point";
    case GeometryPlanKind::kPolyline: return "polyline";
    case GeometryPlanKind::kPolygon: return "polygon";
    case GeometryPlanKind::kPointOrPolygon: return "point_or_polygon";
  }
  return "";
}

std::string ErrorKindName(ResolutionError::Kind kind) {
  switch (kind) {
    case ResolutionError::Kind::kNoCandidate: return "no_candidate";
    case ResolutionError::Kind::kAmbiguous: return "ambiguous";
    case ResolutionError::Kind::kNoIntersection: return "no_intersection";
    case ResolutionError::Kind::kOutOfRange: return "out_of_range";
    case ResolutionError::Kind::kDegenerate: return "degenerate";
    case ResolutionError::Kind::kOutsideExtent: return "outside_extent";
  }
  return "";
}

AddressFields AddressFieldsOf(const RecognizedSpan &span) {
  std::vector<SpanPart> parts = span.parts;
  if (!span.part("number") || !span.part("street")) {
    auto reparsed = RecognizeAddress(span.span.surface);
    if (!reparsed.empty()) parts = reparsed.front().parts;
  }
  AddressFields fields;
  bool has_number = false;
  for (const SpanPart &p : parts) {
    if (p.role == "number" && !has_number) {
      try {
        fields.number = std::stoll(p.surface);
        has_number = true;
      } catch (const std::exception &) {
        throw DataError("bad house number \"" + p.surface + "\"");
      }
    } else if (p.role == "street" && fields.street.empty()) {
      fields.street = p.surface;
    } else if (p.role == "city" && !fields.city) {
      fields.city = p.surface;
    } else if (p.role == "state" && !fields.state) {
      fields.state = p.surface;
    } else if (p.role == "zip" && !fields.zip) {
      fields.zip = p.surface;
    }
  }
  if (!has_number || fields.street.empty()) {
    throw DataError("address \"" + span.span.surface + "\" has no house number and street");
  }
  return fields;
}

struct Resolver::Ranked {
  const GazetteerEntry *entry;
  double quality;
};

namespace {

// "TX 249 Northbound" names the road "TX 249".
std::optional<std::string> WithoutTravelDirection(std::string_view name) {
  static const std::set<std::string, std::less<>> kBound = {"northbound", "southbound", "eastbound", "westbound",
                                                            "nb", "sb", "eb", "wb"};
  const std::string trimmed = Trim(name);
  const size_t space = trimmed.find_last_of(' ');
  if (space == std::string::npos) return std::nullopt;
  if (!kBound.count(ToLower(std::string_view(trimmed).substr(space + 1)))) return std::nullopt;
  return Trim(std::string_view(trimmed).substr(0, space));
}

}  // namespace

std::vector<Resolver::Ranked> Resolver::Candidates(std::string_view name, const ResolutionContext &ctx,
                                                   bool (*accept)(const GazetteerEntry &)) const {
  std::vector<Ranked> out;
  std::optional<NameTier> best;
  for (const GazetteerHit &hit : gaz_.Lookup(name)) {
    if (!accept(*hit.entry) || !FootprintIntersectsBox(hit.entry->footprint, ctx.extent)) continue;
    if (best && hit.tier != *best) break;
    best = hit.tier;
    out.push_back({hit.entry, TierQuality(hit.tier)});
  }
  if (out.empty()) {
    if (auto shorter = WithoutTravelDirection(name)) return Candidates(*shorter, ctx, accept);
  }
  return out;
}

std::vector<Footprint> Resolver::ContextPolygons(const ResolutionContext &ctx) const {
  std::vector<Footprint> polygons;
  std::set<std::string> seen;
  auto add_name = [&](const std::string &name) {
    for (const GazetteerHit &hit : gaz_.Lookup(name)) {
      if (hit.tier == NameTier::kStripped || !AdminPolygon(*hit.entry)) continue;
      if (seen.insert(hit.entry->id).second) polygons.push_back(hit.entry->footprint);
    }
  };
  for (const RecognizedSpan &s : ctx.co_mentioned) {
    if (s.span.category == Category::kC9) add_name(SpanName(s));
    for (const SpanPart &p : s.parts) {
      if (p.role == "city") add_name(p.surface);
    }
  }
  return polygons;
}

Point Resolver::ContextPoint(const ResolutionContext &ctx) const {
  if (ctx.geotag) return *ctx.geotag;
  const auto polygons = ContextPolygons(ctx);
  if (!polygons.empty()) return RepresentativePoint(polygons.front());
  return ctx.extent.center();
}

std::vector<const GazetteerEntry *> Resolver::Order(const std::vector<const GazetteerEntry *> &candidates,
                                                    const ResolutionContext &ctx,
                                                    std::optional<Category> category) const {
  struct Key {
    int class_mismatch;
    int outside_context;
    double geotag_distance;
    double center_distance;
    const GazetteerEntry *entry;
  };
  const std::vector<Footprint> polygons = ContextPolygons(ctx);
  const Point center = ctx.extent.center();
  std::vector<Key> keys;
  for (const GazetteerEntry *e : candidates) {
    const Point rep = RepresentativePoint(e->footprint);
    Key k{0, 0, 0.0, 0.0, e};
    if (category && CategoryOf(e->feature_class) != *category) k.class_mismatch = 1;
    if (!polygons.empty()) {
      const bool inside = std::any_of(polygons.begin(), polygons.end(), [&](const Footprint &p) {
        return PointInPolygon(rep, p.coordinates());
      });
      k.outside_context = inside ? 0 : 1;
    }
    if (ctx.geotag) k.geotag_distance = Distance(rep, *ctx.geotag);
    k.center_distance = Distance(rep, center);
    keys.push_back(k);
  }
  // -1, 0, 1 over the first four rules.
  auto compare = [](const Key &a, const Key &b) {
    if (a.class_mismatch != b.class_mismatch) return a.class_mismatch < b.class_mismatch ? -1 : 1;
    if (a.outside_context != b.outside_context) return a.outside_context < b.outside_context ? -1 : 1;
    if (std::abs(a.geotag_distance - b.geotag_distance) > kTieTolerance) {
      return a.geotag_distance < b.geotag_distance ? -1 : 1;
    }
    if (std::abs(a.center_distance - b.center_distance) > kTieTolerance) {
      return a.center_distance < b.center_distance ? -1 : 1;
    }
    return 0;
  };
  std::sort(keys.begin(), keys.end(), [&](const Key &a, const Key &b) {
    const int c = compare(a, b);
    if (c != 0) return c < 0;
    return a.entry->id < b.entry->id;
  });
  if (ctx.strict && keys.size() >= 2 && compare(keys[0], keys[1]) == 0) {
    std::vector<std::string> tied;
    for (const Key &k : keys) {
      if (compare(keys[0], k) == 0) tied.push_back(k.entry->id);
    }
    std::string message = "ambiguous between";
    for (const std::string &id : tied) message += " " + id;
    throw ResolutionError(ResolutionError::Kind::kAmbiguous, message, tied);
  }
  std::vector<const GazetteerEntry *> out;
  for (const Key &k : keys) out.push_back(k.entry);
  return out;
}

const GazetteerEntry *Resolver::Disambiguate(const std::vector<const GazetteerEntry *> &candidates,
                                             const ResolutionContext &ctx,
                                             std::optional<Category> category) const {
  if (candidates.empty()) return nullptr;
  return Order(candidates, ctx, category).front();
}

ResolvedLocation Resolver::ResolveName(std::string_view name, Category category,
                                       const ResolutionContext &ctx, double span_score) const {
  const auto ranked = Candidates(name, ctx, AnyEntry);
  if (ranked.empty()) {
    throw ResolutionError(ResolutionError::Kind::kNoCandidate, "no entry named \"" + std::string(name) + "\"");
  }
  std::vector<const GazetteerEntry *> entries;
  for (const Ranked &r : ranked) entries.push_back(r.entry);
  const GazetteerEntry *winner = Disambiguate(entries, ctx, category);
  ResolvedLocation loc;
  loc.geometry = winner->footprint;
  loc.category = category;
  loc.method = ResolutionMethod::kExactName;
  loc.confidence = span_score * ranked.front().quality * MethodFactor(loc.method);
  loc.sources = {winner->id};
  loc.plan = DefaultPlan(category);
  RequireInExtent(loc.geometry, ctx);
  return loc;
}

ResolvedLocation Resolver::GeocodeAddress(const AddressFields &address, const ResolutionContext &ctx,
                                          double span_score) const {
  auto ranked = Candidates(address.street, ctx, StreetEntry);
  const AbbreviationTable &table = gaz_.abbreviations();
  auto narrow = [&](const char *key, const std::optional<std::string> &value) {
    if (!value) return;
    const std::string wanted = NormalizeName(*value, table);
    std::vector<Ranked> kept;
    for (const Ranked &r : ranked) {
      const auto q = EntryQualifiers(*r.entry, key, table);
      if (std::find(q.begin(), q.end(), wanted) != q.end()) kept.push_back(r);
    }
    if (!kept.empty()) ranked = std::move(kept);
  };
  narrow("city", address.city);
  narrow("zip", address.zip);

  if (ranked.empty()) {
    if (address.city) {
      try {
        ResolvedLocation loc = ResolveName(*address.city, Category::kC9, ctx, span_score);
        loc.category = Category::kC1;
        loc.method = ResolutionMethod::kFallbackAdmin;
        loc.confidence *= MethodFactor(loc.method);
        loc.plan = GeometryPlanKind::kPoint;
        loc.warnings.push_back("street \"" + address.street + "\" not found; using the city");
        return loc;
      } catch (const ResolutionError &) {
      }
    }
    throw ResolutionError(ResolutionError::Kind::kNoCandidate, "street not found: \"" + address.street + "\"");
  }

  std::vector<const GazetteerEntry *> entries;
  for (const Ranked &r : ranked) entries.push_back(r.entry);
  ResolutionContext local = ctx;
  if (address.city) {
    RecognizedSpan city;
    city.span.category = Category::kC9;
    city.span.surface = *address.city;
    local.co_mentioned.push_back(city);
  }
  const GazetteerEntry *street = Disambiguate(entries, local, Category::kC2);
  const std::vector<Point> &line = street->footprint.coordinates();

  ResolvedLocation loc;
  loc.category = Category::kC1;
  loc.method = ResolutionMethod::kAddressInterpolation;
  loc.plan = GeometryPlanKind::kPoint;
  loc.sources = {street->id};
  double confidence = span_score * ranked.front().quality * MethodFactor(loc.method);
  Point p;
  if (!street->house_range) {
    p = PointAtLength(line, ArcLength(line) / 2.0);
    confidence = std::min(confidence, 0.5);
    loc.warnings.push_back("no house range; using the street midpoint");
  } else {
    const HouseRange r = *street->house_range;
    if (address.number < r.low || address.number > r.high) {
      throw ResolutionError(ResolutionError::Kind::kOutOfRange,
                            "house number " + std::to_string(address.number) + " outside range " +
                                std::to_string(r.low) + "-" + std::to_string(r.high));
    }
    if (address.number == r.low) {
      p = line.front();
    } else if (address.number == r.high) {
      p = line.back();
    } else {
      const double f = static_cast<double>(address.number - r.low) / static_cast<double>(r.high - r.low);
      p = PointAtLength(line, f * ArcLength(line));
    }
  }
  loc.geometry = Footprint::MakePoint(p);
  loc.confidence = confidence;
  RequireInExtent(loc.geometry, ctx);
  return loc;
}

ResolvedLocation Resolver::ResolveIntersection(std::string_view a, std::string_view b,
                                               const ResolutionContext &ctx, double span_score) const {
  const auto ra = Candidates(a, ctx, LineEntry);
  const auto rb = Candidates(b, ctx, LineEntry);
  if (ra.empty()) throw ResolutionError(ResolutionError::Kind::kNoCandidate, "no entry named \"" + std::string(a) + "\"");
  if (rb.empty()) throw ResolutionError(ResolutionError::Kind::kNoCandidate, "no entry named \"" + std::string(b) + "\"");
  auto ordered = [&](const std::vector<Ranked> &r) {
    std::vector<const GazetteerEntry *> entries;
    for (const Ranked &x : r) entries.push_back(x.entry);
    ResolutionContext relaxed = ctx;
    relaxed.strict = false;
    return Order(entries, relaxed, std::nullopt);
  };
  const auto oa = ordered(ra);
  const auto ob = ordered(rb);

  // Best crossing pair; the key is symmetric in the two operands.
  std::optional<std::tuple<size_t, std::string, std::string>> best_key;
  const GazetteerEntry *best_a = nullptr;
  const GazetteerEntry *best_b = nullptr;
  std::vector<Point> best_points;
  for (size_t i = 0; i < oa.size(); ++i) {
    for (size_t j = 0; j < ob.size(); ++j) {
      if (oa[i] == ob[j]) continue;
      std::vector<Point> pts;
      for (const Point &p : PolylineIntersections(LineOf(oa[i]->footprint), LineOf(ob[j]->footprint))) {
        if (ctx.extent.contains(p)) pts.push_back(p);
      }
      if (pts.empty()) continue;
      auto key = std::make_tuple(i + j, std::min(oa[i]->id, ob[j]->id), std::max(oa[i]->id, ob[j]->id));
      if (!best_key || key < *best_key) {
        best_key = key;
        best_a = oa[i];
        best_b = ob[j];
        best_points = std::move(pts);
      }
    }
  }
  if (!best_a) {
    throw ResolutionError(ResolutionError::Kind::kNoIntersection,
                          "\"" + std::string(a) + "\" and \"" + std::string(b) + "\" do not cross");
  }
  const Point anchor = ContextPoint(ctx);
  Point primary = best_points.front();
  for (const Point &p : best_points) {
    if (Distance(p, anchor) < Distance(primary, anchor) - kTieTolerance) primary = p;
  }
  ResolvedLocation loc;
  loc.geometry = Footprint::MakePoint(primary);
  loc.category = Category::kC5;
  loc.method = ResolutionMethod::kLineIntersection;
  loc.plan = GeometryPlanKind::kPoint;
  loc.sources = {best_a->id, best_b->id};
  loc.confidence = span_score * std::min(ra.front().quality, rb.front().quality) * MethodFactor(loc.method);
  if (best_points.size() > 1) {
    loc.crossings = best_points;
    loc.warnings.push_back(std::to_string(best_points.size()) +
                           " crossings; the one nearest the tweet context is primary");
  }
  return loc;
}

ResolvedLocation Resolver::ResolveExit(std::string_view highway, const ExitSpec &exit,
                                       const ResolutionContext &ctx, double span_score) const {
  if (Trim(highway).empty()) {
    throw ResolutionError(ResolutionError::Kind::kNoCandidate, "exit without a highway");
  }
  auto as_exit = [&](ResolvedLocation loc) {
    loc.confidence = loc.confidence / MethodFactor(loc.method) * MethodFactor(ResolutionMethod::kExit);
    loc.method = ResolutionMethod::kExit;
    loc.category = Category::kC4;
    return loc;
  };
  if (exit.number) {
    const std::string name = std::string(highway) + " exit " + *exit.number;
    const auto ranked = Candidates(name, ctx, PointEntry);
    if (!ranked.empty()) {
      std::vector<const GazetteerEntry *> entries;
      for (const Ranked &r : ranked) entries.push_back(r.entry);
      const GazetteerEntry *winner = Disambiguate(entries, ctx, Category::kC4);
      ResolvedLocation loc;
      loc.geometry = winner->footprint;
      loc.category = Category::kC4;
      loc.method = ResolutionMethod::kExit;
      loc.plan = GeometryPlanKind::kPoint;
      loc.sources = {winner->id};
      loc.confidence = span_score * ranked.front().quality * MethodFactor(loc.method);
      RequireInExtent(loc.geometry, ctx);
      return loc;
    }
    if (!exit.cross_street) {
      throw ResolutionError(ResolutionError::Kind::kNoCandidate, "no entry for \"" + name + "\"");
    }
  }
  if (exit.cross_street) {
    return as_exit(ResolveIntersection(highway, *exit.cross_street, ctx, span_score));
  }
  if (exit.from && exit.to) {
    const ResolvedLocation p1 = ResolveIntersection(highway, *exit.from, ctx, span_score);
    const ResolvedLocation p2 = ResolveIntersection(highway, *exit.to, ctx, span_score);
    const GazetteerEntry *road = gaz_.Find(p1.sources.front());
    const std::vector<Point> &line = LineOf(road->footprint);
    const double s1 = ProjectOntoLine(line, p1.geometry.coordinates().front());
    const double s2 = ProjectOntoLine(line, p2.geometry.coordinates().front());
    if (std::abs(s1 - s2) <= kGeometryTolerance) {
      throw ResolutionError(ResolutionError::Kind::kDegenerate, "both exits are at the same point");
    }
    ResolvedLocation loc;
    loc.geometry = Footprint::MakePolyline(SubLine(line, std::min(s1, s2), std::max(s1, s2)));
    loc.category = Category::kC4;
    loc.method = ResolutionMethod::kExit;
    loc.plan = GeometryPlanKind::kPolyline;
    loc.sources = {road->id, p1.sources.back(), p2.sources.back()};
    loc.confidence = std::min(p1.confidence, p2.confidence) / MethodFactor(p1.method) *
                     MethodFactor(ResolutionMethod::kExit);
    if (p2.sources.front() != road->id) loc.warnings.push_back("exits matched different highway entries");
    RequireInExtent(loc.geometry, ctx);
    return loc;
  }
  throw ResolutionError(ResolutionError::Kind::kNoCandidate, "exit has no number or cross street");
}

ResolvedLocation Resolver::ResolveMultiArea(const std::vector<AreaOperand> &parts,
                                            const ResolutionContext &ctx, double span_score) const {
  ResolvedLocation loc;
  loc.category = Category::kC10;
  loc.method = ResolutionMethod::kAreaUnion;
  loc.plan = GeometryPlanKind::kPolygon;
  std::vector<Footprint> footprints;
  double min_quality = 1.0;
  const AbbreviationTable &table = gaz_.abbreviations();
  for (const AreaOperand &part : parts) {
    const auto ranked = Candidates(part.name, ctx, AreaEntry);
    if (ranked.empty()) {
      loc.unresolved.push_back(part.name);
      continue;
    }
    std::vector<const GazetteerEntry *> entries;
    for (const Ranked &r : ranked) entries.push_back(r.entry);
    const GazetteerEntry *winner = Disambiguate(entries, ctx, Category::kC9);
    Footprint fp = winner->footprint;
    if (part.direction) {
      const std::string dir = NormalizeToken(*part.direction, table);
      const auto quadrant = Quadrant(fp.bounds(), dir);
      if (fp.kind() != FootprintKind::kPolygon || !quadrant) {
        loc.warnings.push_back("direction \"" + *part.direction + "\" ignored for " + part.name);
      } else {
        auto ring = ClipRingToBox(fp.coordinates(), *quadrant);
        if (ring.empty()) {
          loc.warnings.push_back("direction \"" + *part.direction + "\" left nothing of " + part.name);
        } else {
          fp = Footprint::MakePolygon(std::move(ring));
        }
      }
    }
    footprints.push_back(std::move(fp));
    loc.sources.push_back(winner->id);
    min_quality = std::min(min_quality, ranked.front().quality);
  }
  if (footprints.empty()) {
    throw ResolutionError(ResolutionError::Kind::kNoCandidate, "none of the areas were found");
  }
  loc.confidence = span_score * min_quality * MethodFactor(loc.method);
  if (!loc.unresolved.empty()) {
    loc.confidence = std::min(loc.confidence, span_score * min_quality * 0.5);
  }
  if (footprints.size() == 1) {
    loc.geometry = footprints.front();
  } else {
    std::vector<Point> all;
    for (const Footprint &fp : footprints) {
      all.insert(all.end(), fp.coordinates().begin(), fp.coordinates().end());
    }
    auto hull = ConvexHull(std::move(all));
    if (hull.size() >= 4) {
      loc.geometry = Footprint::MakePolygon(std::move(hull));
    } else if (hull.size() >= 2) {
      loc.geometry = Footprint::MakePolyline(std::move(hull));
      loc.warnings.push_back("areas are collinear; hull is a line");
    } else {
      loc.geometry = Footprint::MakePoint(hull.front());
    }
  }
  RequireInExtent(loc.geometry, ctx);
  return loc;
}

ResolvedLocation Resolver::Resolve(const RecognizedSpan &span, const ResolutionContext &ctx) const {
  const double score = span.score;
  const Category category = span.span.category;
  switch (category) {
    case Category::kC1:
      return GeocodeAddress(AddressFieldsOf(span), ctx, score);
    case Category::kC4: {
      RecognizedSpan s = span;
      if (!s.part("exit_number") && !s.part("exit_street") && !s.part("exit_from")) {
        auto reparsed = RecognizeExit(span.span.surface);
        if (!reparsed.empty()) {
          for (SpanPart p : reparsed.front().parts) {
            if (p.role != "highway" || !s.part("highway")) s.parts.push_back(p);
          }
        }
      }
      ExitSpec exit;
      if (const SpanPart *p = s.part("exit_number")) exit.number = p->surface;
      if (const SpanPart *p = s.part("exit_street")) exit.cross_street = p->surface;
      if (const SpanPart *p = s.part("exit_from")) exit.from = p->surface;
      if (const SpanPart *p = s.part("exit_to")) exit.to = p->surface;
      const SpanPart *hwy = s.part("highway");
      ResolvedLocation loc = ResolveExit(hwy ? hwy->surface : std::string(), exit, ctx, score);
      if (exit.from) loc.plan = GeometryPlanKind::kPolyline;
      return loc;
    }
    case Category::kC5: {
      const SpanPart *a = span.part("road_a");
      const SpanPart *b = span.part("road_b");
      std::string sa = a ? a->surface : std::string();
      std::string sb = b ? b->surface : std::string();
      if (!a || !b) {
        auto reparsed = RecognizeIntersection(span.span.surface);
        if (!reparsed.empty()) {
          if (const SpanPart *p = reparsed.front().part("road_a")) sa = p->surface;
          if (const SpanPart *p = reparsed.front().part("road_b")) sb = p->surface;
        }
      }
      if (sa.empty() || sb.empty()) {
        throw ResolutionError(ResolutionError::Kind::kNoCandidate, "intersection needs two roads");
      }
      ResolvedLocation loc = ResolveIntersection(sa, sb, ctx, score);
      RequireInExtent(loc.geometry, ctx);
      return loc;
    }
    case Category::kC10: {
      std::vector<SpanPart> parts = span.parts;
      if (!span.part("area")) {
        auto reparsed = RecognizeMultiArea(span.span.surface);
        if (!reparsed.empty()) {
          parts = reparsed.front().parts;
          for (SpanPart &p : parts) {
            p.start += span.span.start;
            p.end += span.span.start;
          }
        }
      }
      std::vector<AreaOperand> operands;
      for (const SpanPart &area : parts) {
        if (area.role != "area") continue;
        AreaOperand op{area.surface, std::nullopt};
        for (const SpanPart &d : parts) {
          if (d.role == "direction" && d.start >= area.start && d.end <= area.end) {
            op.direction = d.surface;
            std::string rest = Utf8Text(area.surface).substr(d.end - area.start, Utf8Length(area.surface));
            rest = Trim(rest);
            if (!rest.empty() && rest[0] == '.') rest = Trim(rest.substr(1));
            op.name = rest;
          }
        }
        operands.push_back(std::move(op));
      }
      if (operands.empty()) {
        throw ResolutionError(ResolutionError::Kind::kNoCandidate, "multi-area span has no areas");
      }
      return ResolveMultiArea(operands, ctx, score);
    }
    default:
      return ResolveName(SpanName(span), category, ctx, score);
  }
}

namespace {

struct WordToken {
  std::string lower;
  size_t start;
  size_t end;
};

bool IsAnd(const std::string &between) {
  const std::string t = ToLower(Trim(between));
  return t == "and" || t == "&" || t == "&amp;";
}

}  // namespace

std::vector<GeometryPlan> SelectGeometry(std::string_view text, const std::vector<RecognizedSpan> &spans) {
  const Utf8Text utf{std::string(text)};
  std::vector<WordToken> words;
  for (const Token &t : Tokenize(utf)) {
    if (t.is_word()) words.push_back({ToLower(t.text), t.start, t.end});
  }
  auto has_cue = [&](size_t start) {
    size_t seen = 0;
    for (size_t i = words.size(); i-- > 0 && seen < 4;) {
      if (words[i].end > start) continue;
      ++seen;
      const std::string &w = words[i].lower;
      if (w == "intersection" || w == "intersections" || w == "corner" || w == "crossing") return true;
    }
    return false;
  };
  auto word_before = [&](size_t start) -> std::string {
    std::string out;
    for (const WordToken &w : words) {
      if (w.end <= start) out = w.lower;
    }
    return out;
  };
  auto word_after = [&](size_t end) -> std::string {
    for (const WordToken &w : words) {
      if (w.start >= end) return w.lower;
    }
    return {};
  };
  auto is_road = [](Category c) { return c == Category::kC2 || c == Category::kC3; };

  std::vector<GeometryPlan> plans;
  std::vector<bool> used(spans.size(), false);
  for (size_t i = 0; i < spans.size(); ++i) {
    if (used[i]) continue;
    const RecognizedSpan &s = spans[i];
    const Category c = s.span.category;
    if (c == Category::kC5) {
      const SpanPart *a = s.part("road_a");
      const SpanPart *b = s.part("road_b");
      if (a && b && a->end <= b->start && IsAnd(utf.substr(a->end, b->start)) && !has_cue(s.span.start)) {
        const std::string before = word_before(s.span.start);
        const std::string after = word_after(s.span.end);
        if (before == "both" || after == "are" || after == "were") {
          plans.push_back({GeometryPlanKind::kPolyline, {i}, {a->surface}, "roads named together"});
          plans.push_back({GeometryPlanKind::kPolyline, {i}, {b->surface}, "roads named together"});
          continue;
        }
      }
      plans.push_back({GeometryPlanKind::kPoint, {i}, {}, "intersection"});
      continue;
    }
    if (is_road(c) && i + 1 < spans.size() && is_road(spans[i + 1].span.category) &&
        s.span.end <= spans[i + 1].span.start &&
        IsAnd(utf.substr(s.span.end, spans[i + 1].span.start)) && has_cue(s.span.start)) {
      plans.push_back({GeometryPlanKind::kPoint,
                       {i, i + 1},
                       {s.span.surface, spans[i + 1].span.surface},
                       "intersection cue"});
      used[i + 1] = true;
      continue;
    }
    GeometryPlanKind kind = DefaultPlan(c);
    if (c == Category::kC4 && s.part("exit_from")) kind = GeometryPlanKind::kPolyline;
    plans.push_back({kind, {i}, {}, "category default"});
  }
  return plans;
}

TweetResolution ResolveTweet(const std::string &tweet_id, const std::string &text,
                             const std::vector<RecognizedSpan> &spans, const Resolver &resolver,
                             const BoundingBox &extent, std::optional<Point> geotag, bool strict) {
  TweetResolution out;
  out.tweet_id = tweet_id;
  const Utf8Text utf(text);
  for (const GeometryPlan &plan : SelectGeometry(text, spans)) {
    ResolutionContext ctx;
    ctx.extent = extent;
    ctx.geotag = geotag;
    ctx.strict = strict;
    for (size_t k = 0; k < spans.size(); ++k) {
      if (std::find(plan.spans.begin(), plan.spans.end(), k) == plan.spans.end()) {
        ctx.co_mentioned.push_back(spans[k]);
      }
    }
    const RecognizedSpan &first = spans[plan.spans.front()];
    ResolvedFeature feature;
    feature.start = first.span.start;
    feature.end = spans[plan.spans.back()].span.end;
    try {
      if (plan.spans.size() == 2) {
        feature.location = resolver.ResolveIntersection(plan.operands[0], plan.operands[1], ctx,
                                                        std::min(first.score, spans[plan.spans[1]].score));
      } else if (plan.operands.size() == 1) {
        for (const SpanPart &p : first.parts) {
          if (p.surface == plan.operands[0] && (p.role == "road_a" || p.role == "road_b")) {
            feature.start = p.start;
            feature.end = p.end;
          }
        }
        feature.location = resolver.ResolveName(plan.operands[0], Category::kC2, ctx, first.score);
      } else {
        feature.location = resolver.Resolve(first, ctx);
      }
      feature.location.plan = plan.kind;
      feature.surface = utf.substr(feature.start, feature.end);
      out.features.push_back(std::move(feature));
    } catch (const ResolutionError &e) {
      for (size_t k : plan.spans) out.unresolved.push_back({spans[k], ErrorKindName(e.kind()), e.what()});
    } catch (const DataError &e) {
      for (size_t k : plan.spans) out.unresolved.push_back({spans[k], "invalid", e.what()});
    }
  }
  return out;
}

}  // namespace geoparse
