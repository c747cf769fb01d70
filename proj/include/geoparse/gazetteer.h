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


#ifndef GEOPARSE_GAZETTEER_H_
#define GEOPARSE_GAZETTEER_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geoparse/category.h"
#include "geoparse/errors.h"
#include "geoparse/geometry.h"
#include "geoparse/normalize.h"
#include "json.hpp"

namespace geoparse {

enum class FeatureClass { kStreet, kHighway, kNatural, kHumanMade, kOrganization, kAdminUnit, kArea };

std::string FeatureClassName(FeatureClass fc);
std::optional<FeatureClass> ParseFeatureClass(std::string_view name);
// street -> C2, highway -> C3, natural -> C6, human_made -> C7,
// organization -> C8, admin_unit and area -> C9.
Category CategoryOf(FeatureClass fc);

struct HouseRange {
  int64_t low = 0;
  int64_t high = 0;
  friend bool operator==(const HouseRange &, const HouseRange &) = default;
};

// Alternate names of the form "city:Houston" or "zip:77026" are qualifiers
// used to narrow address lookups, not names.
struct GazetteerEntry {
  std::string id;
  std::string primary_name;
  std::vector<std::string> alt_names;
  FeatureClass feature_class = FeatureClass::kStreet;
  Footprint footprint;
  std::optional<HouseRange> house_range;
};

// Empty when valid; otherwise the reason.
std::optional<std::string> ValidateEntry(const GazetteerEntry &entry);

// {id, primary_name, alt_names?, feature_class, wkt, house_low?, house_high?}.
// Throws DataError naming the problem, including invalid geometry.
GazetteerEntry EntryFromJson(const nlohmann::json &record);
nlohmann::json EntryToJson(const GazetteerEntry &entry);

// Reads the JSON-lines exchange format. Invalid records and duplicate ids
// become record errors; the rest are returned in file order.
LoadResult<GazetteerEntry> IngestGazetteer(std::istream &in);
LoadResult<GazetteerEntry> IngestGazetteer(const std::filesystem::path &path);

// Normalized values of the "<key>:" qualifiers of an entry.
std::vector<std::string> EntryQualifiers(const GazetteerEntry &entry, std::string_view key,
                                         const AbbreviationTable &table);

// How a lookup key relates to an entry. Lower is better.
enum class NameTier { kPrimary = 0, kAlternate = 1, kStripped = 2 };

struct GazetteerHit {
  const GazetteerEntry *entry = nullptr;
  NameTier tier = NameTier::kPrimary;
};

class GazetteerIndex {
 public:
  GazetteerIndex();

  // Keeps the entries whose footprint touches `extent` and counts the rest.
  // Throws DataError for a zero-area extent or repeated ids. Entries are
  // ordered by id, so the input order does not matter.
  static GazetteerIndex Build(std::vector<GazetteerEntry> entries, const BoundingBox &extent,
                              std::shared_ptr<const AbbreviationTable> table = nullptr);

  // Entries whose normalized name equals the normalized query, best tier
  // first, then by id.
  std::vector<GazetteerHit> Lookup(std::string_view name) const;
  std::vector<const GazetteerEntry *> LookupName(std::string_view name) const;
  // Lookup on an already normalized key.
  std::vector<GazetteerHit> LookupNormalized(const std::string &key) const;

  // Entries whose footprint bounds intersect `box`.
  std::vector<const GazetteerEntry *> Query(const BoundingBox &box) const;
  const GazetteerEntry *Find(std::string_view id) const;

  const std::vector<GazetteerEntry> &entries() const { return entries_; }
  const BoundingBox &extent() const { return extent_; }
  size_t excluded_count() const { return excluded_; }
  // Longest indexed name in normalized words.
  size_t max_name_words() const { return max_name_words_; }
  const AbbreviationTable &abbreviations() const { return *table_; }
  std::shared_ptr<const AbbreviationTable> shared_abbreviations() const { return table_; }

 private:
  friend std::optional<GazetteerIndex> LoadIndexCache(const std::filesystem::path &,
                                                      const std::string &,
                                                      std::shared_ptr<const AbbreviationTable>);

  std::vector<GazetteerEntry> entries_;
  std::vector<BoundingBox> bounds_;
  std::map<std::string, std::vector<std::pair<size_t, NameTier>>, std::less<>> names_;
  BoundingBox extent_;
  size_t excluded_ = 0;
  size_t max_name_words_ = 0;
  std::shared_ptr<const AbbreviationTable> table_;
};

// 64-bit FNV-1a of `data`, as 16 hex digits.
std::string ContentHash(std::string_view data);

// JSON cache of a built index, keyed by the hash of the source file and the
// extent it was built for.
void SaveIndexCache(const GazetteerIndex &index, const std::string &key,
                    const std::filesystem::path &path);
// nullopt when the file is missing, unreadable or was written for another key.
std::optional<GazetteerIndex> LoadIndexCache(const std::filesystem::path &path,
                                             const std::string &key,
                                             std::shared_ptr<const AbbreviationTable> table = nullptr);
std::string IndexCacheKey(std::string_view source, const BoundingBox &extent);

}  // namespace geoparse

#endif  // GEOPARSE_GAZETTEER_H_
