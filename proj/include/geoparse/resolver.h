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


#ifndef GEOPARSE_RESOLVER_H_
#define GEOPARSE_RESOLVER_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geoparse/gazetteer.h"
#include "geoparse/geometry.h"
#include "geoparse/recognizer.h"

namespace geoparse {

enum class ResolutionMethod {
  kExactName,
  kAddressInterpolation,
  kLineIntersection,
  kExit,
  kAreaUnion,
  kFallbackAdmin,
};

std::string MethodName(ResolutionMethod method);
// Multiplier applied to the match quality: 1.0, 0.9, 0.9, 0.8, 0.8, 0.5.
double MethodFactor(ResolutionMethod method);

enum class GeometryPlanKind { kPoint, kPolyline, kPolygon, kPointOrPolygon };

std::string PlanName(GeometryPlanKind kind);

struct ResolvedLocation {
  Footprint geometry;
  // Every crossing when an intersection has more than one; `geometry` holds
  // the primary.
  std::vector<Point> crossings;
  Category category = Category::kC1;
  double confidence = 0.0;
  std::vector<std::string> sources;
  ResolutionMethod method = ResolutionMethod::kExactName;
  GeometryPlanKind plan = GeometryPlanKind::kPoint;
  std::vector<std::string> warnings;
  // Operands of a multi-area description that found no entry.
  std::vector<std::string> unresolved;
};

class ResolutionError : public std::runtime_error {
 public:
  enum class Kind { kNoCandidate, kAmbiguous, kNoIntersection, kOutOfRange, kDegenerate, kOutsideExtent };

  ResolutionError(Kind kind, const std::string &message, std::vector<std::string> candidates = {})
      : std::runtime_error(message), kind_(kind), candidates_(std::move(candidates)) {}

  Kind kind() const { return kind_; }
  // The tied entry ids of an Ambiguous error.
  const std::vector<std::string> &candidates() const { return candidates_; }

 private:
  Kind kind_;
  std::vector<std::string> candidates_;
};

std::string ErrorKindName(ResolutionError::Kind kind);

struct ResolutionContext {
  BoundingBox extent;
  // Other spans of the same tweet; admin units among them hint containment.
  std::vector<RecognizedSpan> co_mentioned;
  std::optional<Point> geotag;
  // Raise Ambiguous instead of falling back to the smallest id.
  bool strict = false;
};

struct AddressFields {
  int64_t number = 0;
  std::string street;
  std::optional<std::string> city;
  std::optional<std::string> state;
  std::optional<std::string> zip;
};

// Fields from the parts of a C1 span, reparsing the surface when the parts
// are missing. Throws DataError when there is no number or street.
AddressFields AddressFieldsOf(const RecognizedSpan &span);

struct ExitSpec {
  std::optional<std::string> number;
  std::optional<std::string> cross_street;
  std::optional<std::string> from;
  std::optional<std::string> to;
};

struct AreaOperand {
  std::string name;
  // "nw", "north", ... when the name carried a directional prefix.
  std::optional<std::string> direction;
};

// How a tweet's spans should be drawn: one plan per geometry to produce.
struct GeometryPlan {
  GeometryPlanKind kind = GeometryPlanKind::kPoint;
  std::vector<size_t> spans;          // indexes into the span list
  std::vector<std::string> operands;  // road names when a plan splits or joins spans
  std::string reason;
};

// Default plan per category, overridden by phrasing: an "intersection" or
// "corner" cue joins two streets into one point; "both A and B" or
// "A and B are ..." splits an intersection into two lines.
std::vector<GeometryPlan> SelectGeometry(std::string_view text, const std::vector<RecognizedSpan> &spans);

class Resolver {
 public:
  explicit Resolver(const GazetteerIndex &gazetteer) : gaz_(gazetteer) {}

  // Dispatches on the span category. Throws ResolutionError.
  ResolvedLocation Resolve(const RecognizedSpan &span, const ResolutionContext &ctx) const;

  ResolvedLocation GeocodeAddress(const AddressFields &address, const ResolutionContext &ctx,
                                  double span_score = 1.0) const;
  ResolvedLocation ResolveIntersection(std::string_view a, std::string_view b,
                                       const ResolutionContext &ctx, double span_score = 1.0) const;
  ResolvedLocation ResolveExit(std::string_view highway, const ExitSpec &exit,
                               const ResolutionContext &ctx, double span_score = 1.0) const;
  ResolvedLocation ResolveMultiArea(const std::vector<AreaOperand> &parts, const ResolutionContext &ctx,
                                    double span_score = 1.0) const;
  ResolvedLocation ResolveName(std::string_view name, Category category, const ResolutionContext &ctx,
                               double span_score = 1.0) const;

  // Tie-break order: feature class fits the category, contained in a
  // co-mentioned admin unit, nearest to the geotag, nearest to the extent
  // center, smallest id (skipped in strict mode, which throws Ambiguous).
  const GazetteerEntry *Disambiguate(const std::vector<const GazetteerEntry *> &candidates,
                                     const ResolutionContext &ctx,
                                     std::optional<Category> category = std::nullopt) const;

  const GazetteerIndex &gazetteer() const { return gaz_; }

 private:
  struct Ranked;
  std::vector<Ranked> Candidates(std::string_view name, const ResolutionContext &ctx,
                                 bool (*accept)(const GazetteerEntry &)) const;
  std::vector<const GazetteerEntry *> Order(const std::vector<const GazetteerEntry *> &candidates,
                                            const ResolutionContext &ctx,
                                            std::optional<Category> category) const;
  std::vector<Footprint> ContextPolygons(const ResolutionContext &ctx) const;
  Point ContextPoint(const ResolutionContext &ctx) const;

  const GazetteerIndex &gaz_;
};

struct ResolvedFeature {
  ResolvedLocation location;
  size_t start = 0;
  size_t end = 0;
  std::string surface;
};

struct UnresolvedSpan {
  RecognizedSpan span;
  std::string kind;
  std::string reason;
};

struct TweetResolution {
  std::string tweet_id;
  std::vector<ResolvedFeature> features;
  std::vector<UnresolvedSpan> unresolved;
};

// Plans the tweet's geometries and resolves each plan.
TweetResolution ResolveTweet(const std::string &tweet_id, const std::string &text,
                             const std::vector<RecognizedSpan> &spans, const Resolver &resolver,
                             const BoundingBox &extent, std::optional<Point> geotag = std::nullopt,
                             bool strict = false);

}  // namespace geoparse

#endif  // GEOPARSE_RESOLVER_H_
