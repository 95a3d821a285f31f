#include <doctest.h>

#include "corpus.hpp"
#include "gmfp/spacefile.hpp"

using namespace gmfp;

namespace {

const char* kAsymG = R"({
  "kind": "finite-gspace",
  "n": 2,
  "entries": [
    {"i": 0, "j": 0, "k": 1, "v": 1.0},
    {"i": 0, "j": 1, "k": 1, "v": 2.0}
  ],
  "T": [0, 0]
})";

}  // namespace

TEST_CASE("parsing the asymmetric two-point G-space") {
  const auto sf = SpaceFile::parse(kAsymG);
  CHECK(sf.kind == SpaceKind::finite_gspace);
  CHECK(sf.n == 2);
  REQUIRE(sf.gtable.has_value());
  CHECK((*sf.gtable)(0, 0, 1) == 1.0);
  CHECK((*sf.gtable)(1, 1, 0) == 2.0);
  REQUIRE(sf.selfmap.has_value());
  CHECK((*sf.selfmap)(1) == 0);
}

TEST_CASE("schema violations carry the right identifiers") {
  CHECK_THROWS_WITH_AS(SpaceFile::parse("{"), doctest::Contains("parse-error"), Error);
  CHECK_THROWS_WITH_AS(SpaceFile::parse(R"({"kind":"finite-gspace","n":3,"entries":[
      {"i":0,"j":0,"k":1,"v":1},{"i":0,"j":0,"k":2,"v":1},{"i":0,"j":1,"k":1,"v":1},
      {"i":0,"j":2,"k":2,"v":1},{"i":1,"j":1,"k":2,"v":1},
      {"i":1,"j":2,"k":2,"v":1}]})"),
                       doctest::Contains("missing-entry"), Error);  // triple {0,1,2} absent
  CHECK_THROWS_WITH_AS(
      SpaceFile::parse(R"({"kind":"finite-metric","n":2,"entries":[{"i":0,"j":1,"v":-1}]})"),
      doctest::Contains("negative-value"), Error);
  CHECK_THROWS_WITH_AS(
      SpaceFile::parse(
          R"({"kind":"finite-metric","n":2,"entries":[{"i":0,"j":1,"v":1},{"i":0,"j":1,"v":2}]})"),
      doctest::Contains("duplicate-key"), Error);
  CHECK_THROWS_WITH_AS(
      SpaceFile::parse(R"({"kind":"finite-metric","n":2,"entries":[{"i":0,"j":5,"v":1}]})"),
      doctest::Contains("index-out-of-range"), Error);
  CHECK_THROWS_WITH_AS(
      SpaceFile::parse(R"({"kind":"finite-metric","n":2,"entries":[{"i":1,"j":0,"v":1}]})"),
      doctest::Contains("i < j"), Error);
  CHECK_THROWS_WITH_AS(
      SpaceFile::parse(R"({"kind":"finite-metric","n":2,"entries":[{"i":0,"j":1,"v":1}],"x":1})"),
      doctest::Contains("unknown field"), Error);
  CHECK_THROWS_WITH_AS(
      SpaceFile::parse(R"({"kind":"finite-metric","n":2,"entries":[{"i":0,"j":1,"v":1}],"T":[0]})"),
      doctest::Contains("one image per"), Error);
}

TEST_CASE("oracle files") {
  const auto sf = SpaceFile::parse(
      R"({"kind":"oracle-1d","interval":[0.0,1.0],"T":"scale:3","assertions":{"complete":true}})");
  CHECK(sf.kind == SpaceKind::oracle_1d);
  CHECK(sf.asserted_complete);
  REQUIRE(sf.oracle.has_value());
  CHECK(sf.oracle->apply(1.0) == 1.0 / 3.0);
  CHECK(OracleSpec::dist(1.0, 0.25) == 0.75);
  const auto grid = sf.oracle->sample_grid(21);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
  CHECK(grid.size() == 21);

  CHECK(SpaceFile::parse(R"({"kind":"oracle-1d","interval":[0,1],"T":"affine:0.5,0.25"})")
            .oracle->apply(1.0) == 0.75);
  CHECK_THROWS_WITH_AS(SpaceFile::parse(R"({"kind":"oracle-1d","interval":[0,1],"T":"warp:2"})"),
                       doctest::Contains("unknown oracle map"), Error);
  CHECK_THROWS_WITH_AS(SpaceFile::parse(R"({"kind":"oracle-1d","interval":[1,0]})"),
                       doctest::Contains("lo must be below hi"), Error);
}

TEST_CASE("serialization round-trips and is canonical") {
  const auto sf = SpaceFile::parse(kAsymG);
  const std::string once = sf.serialize();
  const auto again = SpaceFile::parse(once);
  CHECK(again.serialize() == once);
  CHECK(again.n == sf.n);
  CHECK((*again.gtable)(0, 1, 1) == 2.0);
  CHECK(again.selfmap->image() == sf.selfmap->image());

  const auto oracle = SpaceFile::parse(R"({"kind":"oracle-1d","interval":[0,1],"T":"scale:3"})");
  CHECK(SpaceFile::parse(oracle.serialize()).serialize() == oracle.serialize());
}

TEST_CASE("generated spaces serialize deterministically") {
  const auto a = SpaceFile::from_gtable(random_gmetric(5, 42), random_selfmap(5, 7));
  const auto b = SpaceFile::from_gtable(random_gmetric(5, 42), random_selfmap(5, 7));
  CHECK(a.serialize() == b.serialize());
  CHECK(a.serialize() != SpaceFile::from_gtable(random_gmetric(5, 43), std::nullopt).serialize());
  // Full tables for n = 5: C(5,2) doubled triples + C(5,3) distinct + mixed.
  const auto parsed = SpaceFile::parse(a.serialize());
  CHECK(check_gmetric(*parsed.gtable, 1e-9).empty());
}

TEST_CASE("metric space files") {
  const auto sf = SpaceFile::parse(
      R"({"kind":"finite-metric","n":3,"entries":[
          {"i":0,"j":1,"v":1.0},{"i":0,"j":2,"v":4.0},{"i":1,"j":2,"v":4.0}],
          "T":[0,0,1]})");
  REQUIRE(sf.metric.has_value());
  CHECK((*sf.metric)(2, 0) == 4.0);
  CHECK((*sf.metric)(0, 2) == 4.0);
  const auto text = sf.serialize();
  CHECK(SpaceFile::parse(text).serialize() == text);
}
