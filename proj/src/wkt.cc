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


#include "geoparse/wkt.h"

#include <cctype>
#include <charconv>
#include <cmath>

#include "geoparse/errors.h"

namespace geoparse {

namespace {

class WktReader {
 public:
  explicit WktReader(std::string_view text) : s_(text) {}

  Footprint Read() {
    const std::string keyword = Keyword();
    Footprint fp;
    if (keyword == "POINT") {
      Expect('(');
      std::vector<Point> pts{ReadPoint()};
      Expect(')');
      fp = Footprint::MakePoint(pts[0]);
    } else if (keyword == "LINESTRING") {
      fp = Footprint::MakePolyline(ReadPointList());
    } else if (keyword == "POLYGON") {
      Expect('(');
      std::vector<Point> ring = ReadPointList();
      Skip();
      if (pos_ < s_.size() && s_[pos_] == ',') Fail("polygons with holes are not supported");
      Expect(')');
      fp = Footprint::MakePolygon(std::move(ring));
    } else if (keyword.empty()) {
      Fail("missing geometry type");
    } else {
      Fail("unsupported geometry type " + keyword);
    }
    Skip();
    if (pos_ != s_.size()) Fail("trailing text");
    return fp;
  }

 private:
  [[noreturn]] void Fail(const std::string &msg) const {
    throw DataError("bad WKT: " + msg);
  }

  void Skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string Keyword() {
    Skip();
    std::string out;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(s_[pos_++]))));
    }
    return out;
  }

  void Expect(char c) {
    Skip();
    if (pos_ >= s_.size() || s_[pos_] != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  double Number() {
    Skip();
    const char *begin = s_.data() + pos_;
    const char *end = s_.data() + s_.size();
    if (begin < end && *begin == '+') ++begin;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || !std::isfinite(value)) Fail("expected a number");
    pos_ = static_cast<size_t>(ptr - s_.data());
    return value;
  }

  Point ReadPoint() {
    Point p;
    p.lon = Number();
    p.lat = Number();
    return p;
  }

  std::vector<Point> ReadPointList() {
    Expect('(');
    std::vector<Point> pts{ReadPoint()};
    while (true) {
      Skip();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        pts.push_back(ReadPoint());
        continue;
      }
      break;
    }
    Expect(')');
    return pts;
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

Footprint ParseWkt(std::string_view text) { return WktReader(text).Read(); }

std::string FormatCoordinate(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string FormatWkt(const Footprint &fp) {
  std::string coords;
  for (size_t i = 0; i < fp.coordinates().size(); ++i) {
    if (i) coords += ", ";
    coords += FormatCoordinate(fp.coordinates()[i].lon) + " " +
              FormatCoordinate(fp.coordinates()[i].lat);
  }
  switch (fp.kind()) {
    case FootprintKind::kPoint: return "POINT (" + coords + ")";
    case FootprintKind::kPolyline: return "LINESTRING (" + coords + ")";
    case FootprintKind::kPolygon: return "POLYGON ((" + coords + "))";
  }
  return {};
}

}  // namespace geoparse
