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
#include "geoparse/recognizer.h"
#include "test_paths.h"

using namespace geoparse;

namespace {

const BoundingBox kTexas{-100.6, 26.5, -93.5, 33.5};

const GazetteerIndex &Gaz() {
  static const GazetteerIndex index = [] {
    auto loaded = IngestGazetteer(std::filesystem::path(Fixture("gazetteer.jsonl")));
    REQUIRE(loaded.errors.empty());
    return GazetteerIndex::Build(std::move(loaded.records), kTexas);
  }();
  return index;
}

std::vector<std::string> Surfaces(const std::vector<RecognizedSpan> &spans) {
  std::vector<std::string> out;
  for (const auto &s : spans) out.push_back(CategoryCode(s.span.category) + " " + s.span.surface);
  return out;
}

}  // namespace

TEST_SUITE("recognizer") {
  TEST_CASE("addresses") {
    auto spans = RecognizeAddress("12 Y/O BOY NEEDs RESCUED! 8100 Cypresswood Dr Spring TX 77379 They are trapped");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].span.surface == "8100 Cypresswood Dr Spring TX 77379");
    REQUIRE(spans[0].part("zip"));
    CHECK(spans[0].part("zip")->surface == "77379");
    CHECK(spans[0].part("street")->surface == "Cypresswood Dr");
    CHECK(Surfaces(RecognizeAddress("at 11800 Grant Rd. Apt. 1009. Cypress, Texas 77429")) ==
          std::vector<std::string>{"C1 11800 Grant Rd. Apt. 1009. Cypress, Texas 77429"});
    CHECK(RecognizeAddress("12 Y/O BOY").empty());
  }

  TEST_CASE("highways") {
    CHECK(Surfaces(RecognizeHighway("update from Hogan St, I-10, I-45: water down")) ==
          std::vector<std::string>{"C3 I-10", "C3 I-45"});
    CHECK(Surfaces(RecognizeHighway("Avoided highway 37 Took")) == std::vector<std::string>{"C3 highway 37"});
    CHECK(Surfaces(RecognizeHighway("Hwy 90 closed")) == std::vector<std::string>{"C3 Hwy 90"});
    CHECK(Surfaces(RecognizeHighway("on I45 now")) == std::vector<std::string>{"C3 I45"});
  }

  TEST_CASE("exits") {
    CHECK(Surfaces(RecognizeExit("off I-10 exit 61 Anahuac")) == std::vector<std::string>{"C4 I-10 exit 61"});
    CHECK(Surfaces(RecognizeExit("stuck on I-45 between Cypress Hill & Huffmeister exits")) ==
          std::vector<std::string>{"C4 I-45 between Cypress Hill & Huffmeister exits"});
  }

  TEST_CASE("intersections in all five connector forms") {
    for (const char *conn : {"and", "&", "at", "@", "/"}) {
      const std::string text = std::string("flooding at Clay Rd ") + conn + " Queenston today";
      INFO(text);
      CHECK(Surfaces(RecognizeIntersection(text)) ==
            std::vector<std::string>{std::string("C5 Clay Rd ") + conn + " Queenston"});
    }
    CHECK(Surfaces(RecognizeIntersection("Mary Bates and Concho St")) ==
          std::vector<std::string>{"C5 Mary Bates and Concho St"});
    CHECK(Surfaces(RecognizeIntersection("White Oak Bayou at Houston Avenue 1:00 pm")) ==
          std::vector<std::string>{"C5 White Oak Bayou at Houston Avenue"});
  }

  TEST_CASE("road segment given by two intersections") {
    auto spans = RecognizeIntersection("Streets Flooded: Almeda Genoa Rd. from Windmill Lakes Blvd. to Rowlett Rd.");
    CHECK(Surfaces(spans) ==
          std::vector<std::string>{"C5 Almeda Genoa Rd. from Windmill Lakes Blvd", "C5 Rowlett Rd"});
    REQUIRE(spans.size() == 2);
    REQUIRE(spans[1].part("road_a"));
    CHECK(spans[1].part("road_a")->surface == "Almeda Genoa Rd");
  }

  TEST_CASE("multiple areas") {
    CHECK(Surfaces(RecognizeMultiArea("rescues in the Pasadena/Deer Park area?")) ==
          std::vector<std::string>{"C10 Pasadena/Deer Park"});
    CHECK(Surfaces(RecognizeMultiArea("any of you in NW Houston/Lakewood Forest, Projections")) ==
          std::vector<std::string>{"C10 NW Houston/Lakewood Forest"});
    CHECK(RecognizeMultiArea("12 Y/O BOY").empty());
    CHECK(RecognizeMultiArea("trailers/trucks").empty());
  }

  TEST_CASE("exit by street name inherits the highway mentioned before it") {
    auto spans = Recognize("TX 249 Northbound at Chasewood Dr. Louetta Rd. Exit. #houstonflood",
                           GrammarRuleSet::Builtin());
    REQUIRE(spans.size() == 2);
    CHECK(spans[1].span.surface == "Louetta Rd. Exit");
    CHECK(spans[1].span.category == Category::kC4);
    REQUIRE(spans[1].part("highway"));
    CHECK(spans[1].part("highway")->surface == "TX 249 Northbound");
  }

  TEST_CASE("\"both A and B\" yields two roads") {
    auto spans = Recognize("Both Allen Parkway and Memorial Dr are flooded", GrammarRuleSet::Builtin());
    CHECK(Surfaces(spans) == std::vector<std::string>{"C2 Allen Parkway", "C2 Memorial Dr"});
    auto joined = Recognize("Flooding at the intersection of Allen Parkway and Memorial Dr",
                            GrammarRuleSet::Builtin());
    CHECK(Surfaces(joined) == std::vector<std::string>{"C5 Allen Parkway and Memorial Dr"});
  }

  TEST_CASE("numbered street names") {
    CHECK(Surfaces(Recognize("Water over 26th St near", GrammarRuleSet::Builtin())) ==
          std::vector<std::string>{"C2 26th St"});
    CHECK(Surfaces(Recognize("31st Ave is under water", GrammarRuleSet::Builtin())) ==
          std::vector<std::string>{"C2 31st Ave"});
  }

  TEST_CASE("gazetteer names") {
    auto spans = MatchGazetteerNames("Buffalo Bayou holding steady near Terry Hershey Park", Gaz());
    CHECK(Surfaces(spans) == std::vector<std::string>{"C6 Buffalo Bayou", "C7 Terry Hershey Park"});
    CHECK(spans[0].rule_id == "gazetteer:n002");
    CHECK(spans[0].score == doctest::Approx(1.0));
    auto alt = MatchGazetteerNames("Left Corpus bout", Gaz());
    REQUIRE(alt.size() == 1);
    CHECK(alt[0].score == doctest::Approx(0.8));
    auto stripped = MatchGazetteerNames("Allen Parkway, Memorial, Waugh", Gaz());
    CHECK(Surfaces(stripped) == std::vector<std::string>{"C2 Allen Parkway", "C2 Memorial"});
    CHECK(stripped[1].score == doctest::Approx(0.7));
  }

  TEST_CASE("lowercase names need the caseless option") {
    CHECK(MatchGazetteerNames("flooding in houston", Gaz()).empty());
    CHECK(MatchGazetteerNames("flooding in houston", Gaz(), RecognizerOptions{true}).size() == 1);
  }

  TEST_CASE("admin unit absorbs a following state") {
    auto spans = Recognize("Hurricane Harvey from Rockport, TX", GrammarRuleSet::Builtin(), &Gaz());
    CHECK(Surfaces(spans) == std::vector<std::string>{"C9 Rockport, TX"});
    REQUIRE(spans[0].part("state"));
  }

  TEST_CASE("hashtags") {
    auto spans = Recognize("#Houston #HoustonFlood the intersection of I-45 & N. Main Street",
                           GrammarRuleSet::Builtin(), &Gaz());
    CHECK(Surfaces(spans) == std::vector<std::string>{"C9 Houston", "C5 I-45 & N. Main Street"});
    auto only_tag = Recognize("Pray for #HoustonStrong", GrammarRuleSet::Builtin(), &Gaz());
    CHECK(Surfaces(only_tag) == std::vector<std::string>{"C9 Houston"});
  }

  TEST_CASE("longest match wins across rules and gazetteer") {
    auto spans = Recognize("conditions around Cypress Ridge High School near Cypress Creek",
                           GrammarRuleSet::Builtin(), &Gaz());
    CHECK(Surfaces(spans) == std::vector<std::string>{"C8 Cypress Ridge High School", "C6 Cypress Creek"});
  }

  TEST_CASE("span JSON round trip") {
    const std::string text = "8100 Cypresswood Dr Spring TX 77379";
    auto spans = RecognizeAddress(text);
    REQUIRE(spans.size() == 1);
    auto back = SpanFromJson(SpanToJson(spans[0]), text);
    CHECK(back.span == spans[0].span);
    CHECK(back.parts.size() == spans[0].parts.size());
    CHECK(back.rule_id == spans[0].rule_id);
    auto j = SpanToJson(spans[0]);
    j["surface"] = "nope";
    CHECK_THROWS_AS(SpanFromJson(j, text), DataError);
  }

  TEST_CASE("no spans on plain text") {
    CHECK(Recognize("Stay safe everyone!", GrammarRuleSet::Builtin(), &Gaz()).empty());
    CHECK(Recognize("", GrammarRuleSet::Builtin(), &Gaz()).empty());
  }
}
