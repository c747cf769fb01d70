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


#include "geoparse/gazetteer.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "geoparse/grammar.h"
#include "geoparse/wkt.h"

namespace geoparse {

using nlohmann::json;

namespace {

constexpr const char *kClassNames[] = {"street", "highway", "natural", "human_made",
                                       "organization", "admin_unit", "area"};

bool IsQualifier(const std::string &name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos) return false;
  const std::string key = name.substr(0, colon);
  return key == "city" || key == "zip" || key == "state";
}

std::shared_ptr<const AbbreviationTable> DefaultTable(std::shared_ptr<const AbbreviationTable> t) {
  return t ? t : GrammarRuleSet::Builtin().shared_abbreviations();
}

}  // namespace

std::string FeatureClassName(FeatureClass fc) { return kClassNames[static_cast<int>(fc)]; }

std::optional<FeatureClass> ParseFeatureClass(std::string_view name) {
  for (int i = 0; i < 7; ++i) {
    if (name == kClassNames[i]) return static_cast<FeatureClass>(i);
  }
  return std::nullopt;
}

Category CategoryOf(FeatureClass fc) {
  switch (fc) {
    case FeatureClass::kStreet: return Category::kC2;
    case FeatureClass::kHighway: return Category::kC3;
    case FeatureClass::kNatural: return Category::kC6;
    case FeatureClass::kHumanMade: return Category::kC7;
    case FeatureClass::kOrganization: return Category::kC8;
    case FeatureClass::kAdminUnit:
    case FeatureClass::kArea: return Category::kC9;
  }
  return Category::kC9;
}

std::optional<std::string> ValidateEntry(const GazetteerEntry &entry) {
  if (entry.id.empty()) return "empty id";
  if (Trim(entry.primary_name).empty()) return "empty primary_name";
  if (auto problem = entry.footprint.Validate()) return problem;
  const FootprintKind kind = entry.footprint.kind();
  switch (entry.feature_class) {
    case FeatureClass::kStreet:
    case FeatureClass::kHighway:
      if (kind != FootprintKind::kPolyline) {
        return FeatureClassName(entry.feature_class) + " needs a LINESTRING footprint";
      }
      break;
    case FeatureClass::kAdminUnit:
    case FeatureClass::kArea:
    case FeatureClass::kOrganization:
      if (kind == FootprintKind::kPolyline) {
        return FeatureClassName(entry.feature_class) + " needs a POINT or POLYGON footprint";
      }
      break;
    case FeatureClass::kNatural:
    case FeatureClass::kHumanMade:
      break;
  }
  if (entry.house_range) {
    if (entry.feature_class != FeatureClass::kStreet && entry.feature_class != FeatureClass::kHighway) {
      return "house range on a " + FeatureClassName(entry.feature_class);
    }
    if (entry.house_range->low > entry.house_range->high) return "house_low exceeds house_high";
  }
  return std::nullopt;
}

GazetteerEntry EntryFromJson(const json &record) {
  if (!record.is_object()) throw DataError("record is not a JSON object");
  auto text_field = [&](const char *key) -> std::string {
    auto it = record.find(key);
    if (it == record.end() || !it->is_string()) {
      throw DataError(std::string("missing or non-string \"") + key + "\"");
    }
    return it->get<std::string>();
  };
  GazetteerEntry entry;
  entry.id = text_field("id");
  entry.primary_name = text_field("primary_name");
  if (auto it = record.find("alt_names"); it != record.end() && !it->is_null()) {
    if (!it->is_array()) throw DataError("\"alt_names\" is not an array");
    for (const auto &alt : *it) {
      if (!alt.is_string()) throw DataError("non-string alternate name");
      entry.alt_names.push_back(alt.get<std::string>());
    }
  }
  const std::string fc = text_field("feature_class");
  auto parsed = ParseFeatureClass(fc);
  if (!parsed) throw DataError("unknown feature_class \"" + fc + "\"");
  entry.feature_class = *parsed;
  entry.footprint = ParseWkt(text_field("wkt"));
  const bool has_low = record.contains("house_low") && !record["house_low"].is_null();
  const bool has_high = record.contains("house_high") && !record["house_high"].is_null();
  if (has_low != has_high) throw DataError("house_low and house_high must come together");
  if (has_low) {
    if (!record["house_low"].is_number_integer() || !record["house_high"].is_number_integer()) {
      throw DataError("house range bounds must be integers");
    }
    entry.house_range = HouseRange{record["house_low"].get<int64_t>(),
                                   record["house_high"].get<int64_t>()};
  }
  if (auto problem = ValidateEntry(entry)) throw DataError(*problem);
  return entry;
}

json EntryToJson(const GazetteerEntry &entry) {
  json j = {{"id", entry.id},
            {"primary_name", entry.primary_name},
            {"alt_names", entry.alt_names},
            {"feature_class", FeatureClassName(entry.feature_class)},
            {"wkt", FormatWkt(entry.footprint)}};
  if (entry.house_range) {
    j["house_low"] = entry.house_range->low;
    j["house_high"] = entry.house_range->high;
  }
  return j;
}

LoadResult<GazetteerEntry> IngestGazetteer(std::istream &in) {
  LoadResult<GazetteerEntry> result;
  std::set<std::string, std::less<>> ids;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    try {
      GazetteerEntry entry = EntryFromJson(json::parse(line));
      if (!ids.insert(entry.id).second) throw DataError("duplicate id \"" + entry.id + "\"");
      result.records.push_back(std::move(entry));
    } catch (const json::exception &e) {
      result.errors.push_back({number, std::string("invalid JSON: ") + e.what()});
    } catch (const DataError &e) {
      result.errors.push_back({number, e.what()});
    }
  }
  return result;
}

LoadResult<GazetteerEntry> IngestGazetteer(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("gazetteer not found: " + path.string());
  return IngestGazetteer(in);
}

std::vector<std::string> EntryQualifiers(const GazetteerEntry &entry, std::string_view key,
                                         const AbbreviationTable &table) {
  std::vector<std::string> out;
  const std::string prefix = std::string(key) + ":";
  for (const std::string &alt : entry.alt_names) {
    if (StartsWith(alt, prefix)) out.push_back(NormalizeName(alt.substr(prefix.size()), table));
  }
  return out;
}

GazetteerIndex::GazetteerIndex() : table_(DefaultTable(nullptr)) {}

GazetteerIndex GazetteerIndex::Build(std::vector<GazetteerEntry> entries, const BoundingBox &extent,
                                     std::shared_ptr<const AbbreviationTable> table) {
  if (extent.degenerate()) throw DataError("extent has zero area");
  GazetteerIndex index;
  index.table_ = DefaultTable(std::move(table));
  index.extent_ = extent;
  std::sort(entries.begin(), entries.end(),
            [](const GazetteerEntry &a, const GazetteerEntry &b) { return a.id < b.id; });
  for (size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].id == entries[i - 1].id) throw DataError("duplicate id \"" + entries[i].id + "\"");
  }
  for (GazetteerEntry &entry : entries) {
    if (!FootprintIntersectsBox(entry.footprint, extent)) {
      ++index.excluded_;
      continue;
    }
    index.entries_.push_back(std::move(entry));
  }
  for (size_t i = 0; i < index.entries_.size(); ++i) {
    const GazetteerEntry &entry = index.entries_[i];
    index.bounds_.push_back(entry.footprint.bounds());
    std::map<std::string, NameTier> keys;
    auto add = [&](const std::string &key, NameTier tier) {
      if (key.empty()) return;
      auto [it, inserted] = keys.emplace(key, tier);
      if (!inserted && tier < it->second) it->second = tier;
    };
    std::vector<std::pair<std::string, NameTier>> names{{entry.primary_name, NameTier::kPrimary}};
    for (const std::string &alt : entry.alt_names) {
      if (!IsQualifier(alt)) names.emplace_back(alt, NameTier::kAlternate);
    }
    for (const auto &[name, tier] : names) {
      const std::string key = NormalizeName(name, *index.table_);
      add(key, tier);
      add(StripSuffix(key, *index.table_), NameTier::kStripped);
    }
    for (const auto &[key, tier] : keys) {
      index.names_[key].emplace_back(i, tier);
      const size_t words = static_cast<size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
      index.max_name_words_ = std::max(index.max_name_words_, words);
    }
  }
  return index;
}

std::vector<GazetteerHit> GazetteerIndex::LookupNormalized(const std::string &key) const {
  std::vector<GazetteerHit> hits;
  auto it = names_.find(key);
  if (it == names_.end()) return hits;
  for (const auto &[i, tier] : it->second) hits.push_back({&entries_[i], tier});
  std::stable_sort(hits.begin(), hits.end(), [](const GazetteerHit &a, const GazetteerHit &b) {
    if (a.tier != b.tier) return a.tier < b.tier;
    return a.entry->id < b.entry->id;
  });
  return hits;
}

std::vector<GazetteerHit> GazetteerIndex::Lookup(std::string_view name) const {
  return LookupNormalized(NormalizeName(name, *table_));
}

std::vector<const GazetteerEntry *> GazetteerIndex::LookupName(std::string_view name) const {
  std::vector<const GazetteerEntry *> out;
  for (const GazetteerHit &hit : Lookup(name)) out.push_back(hit.entry);
  return out;
}

std::vector<const GazetteerEntry *> GazetteerIndex::Query(const BoundingBox &box) const {
  std::vector<const GazetteerEntry *> out;
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (bounds_[i].intersects(box)) out.push_back(&entries_[i]);
  }
  return out;
}

const GazetteerEntry *GazetteerIndex::Find(std::string_view id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const GazetteerEntry &e, std::string_view v) { return e.id < v; });
  if (it == entries_.end() || it->id != id) return nullptr;
  return &*it;
}

std::string ContentHash(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string IndexCacheKey(std::string_view source, const BoundingBox &extent) {
  std::ostringstream out;
  out << ContentHash(source) << ':' << FormatWkt(Footprint::MakePolygon(extent.ring()));
  return ContentHash(out.str());
}

void SaveIndexCache(const GazetteerIndex &index, const std::string &key,
                    const std::filesystem::path &path) {
  json entries = json::array();
  for (const GazetteerEntry &e : index.entries()) entries.push_back(EntryToJson(e));
  const BoundingBox &x = index.extent();
  json doc = {{"format", "geoparse-gazetteer-cache"},
              {"version", 1},
              {"key", key},
              {"extent", {x.min_lon, x.min_lat, x.max_lon, x.max_lat}},
              {"excluded", index.excluded_count()},
              {"entries", std::move(entries)}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write cache " + path.string());
  out << doc.dump() << '\n';
  if (!out) throw IoError("cannot write cache " + path.string());
}

std::optional<GazetteerIndex> LoadIndexCache(const std::filesystem::path &path, const std::string &key,
                                             std::shared_ptr<const AbbreviationTable> table) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    const json doc = json::parse(in);
    if (doc.value("format", "") != "geoparse-gazetteer-cache" || doc.value("version", 0) != 1 ||
        doc.value("key", "") != key) {
      return std::nullopt;
    }
    const auto &x = doc.at("extent");
    const BoundingBox extent{x.at(0).get<double>(), x.at(1).get<double>(), x.at(2).get<double>(),
                             x.at(3).get<double>()};
    std::vector<GazetteerEntry> entries;
    for (const json &e : doc.at("entries")) entries.push_back(EntryFromJson(e));
    GazetteerIndex index = GazetteerIndex::Build(std::move(entries), extent, std::move(table));
    index.excluded_ += doc.at("excluded").get<size_t>();
    return index;
  } catch (const std::exception &) {
    return std::nullopt;
  }
}

}  // namespace geoparse
