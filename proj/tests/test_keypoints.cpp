#include <doctest.h>

#include "capgeo/notation.hpp"
#include "support.hpp"

using namespace capgeo;
using testsupport::Gen;

TEST_CASE("rational parsing and equality") {
  CHECK(*Rational::parse("5") == Rational(5, 1));
  CHECK(*Rational::parse("-3") == Rational(-3, 1));
  CHECK(*Rational::parse("2/4") == Rational(1, 2));
  CHECK(*Rational::parse("0.5") == Rational(1, 2));
  CHECK(*Rational::parse("0.75") == Rational(3, 4));
  CHECK(*Rational::parse("-3.2") == Rational(-16, 5));
  CHECK(*Rational::parse("+7") == Rational(7, 1));
  CHECK_FALSE(Rational::parse("2x"));
  CHECK_FALSE(Rational::parse("1/0"));
  CHECK_FALSE(Rational::parse("1.2.3"));
  CHECK_FALSE(Rational::parse(""));
  CHECK_FALSE(Rational::parse("√3"));
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("entity canonical forms") {
  SUBCASE("segment endpoints sort") {
    CHECK(entity_text(canonical_entity(parse_entity("segment BA"))) == "segment AB");
  }
  SUBCASE("single-letter labels uppercase") {
    CHECK(entity_text(canonical_entity(parse_entity("point a"))) == "point A");
    CHECK(entity_text(canonical_entity(parse_entity("segment ba"))) == "segment AB");
  }
  SUBCASE("axis labels stay verbatim") {
    CHECK(entity_text(canonical_entity(parse_entity("axis x"))) == "axis x");
  }
  SUBCASE("named line stays verbatim") {
    CHECK(entity_text(canonical_entity(parse_entity("line l"))) == "line l");
    CHECK(entity_text(canonical_entity(parse_entity("line BA"))) == "line AB");
  }
  SUBCASE("angle outer labels sort around the vertex") {
    CHECK(entity_text(canonical_entity(parse_entity("angle CBA"))) == "angle ABC");
    CHECK(entity_text(canonical_entity(parse_entity("angle B"))) == "angle B");
  }
  SUBCASE("ray keeps direction") {
    CHECK(entity_text(canonical_entity(parse_entity("ray BA"))) == "ray BA");
  }
  SUBCASE("polygon minimal cycle under rotation and reflection") {
    CHECK(entity_text(canonical_entity(parse_entity("parallelogram BCDA"))) ==
          "parallelogram ABCD");
    CHECK(entity_text(canonical_entity(parse_entity("parallelogram ADCB"))) ==
          "parallelogram ABCD");
    CHECK(entity_text(canonical_entity(parse_entity("triangle CAB"))) == "triangle ABC");
  }
  SUBCASE("multi-character names are one label") {
    const EntityRef e = canonical_entity(parse_entity("circle c1"));
    CHECK(e.labels == std::vector<std::string>{"c1"});
  }
  SUBCASE("label arity is enforced") {
    CHECK_THROWS_AS(canonical_entity(parse_entity("segment ABC")), NotationError);
    CHECK_THROWS_AS(canonical_entity(parse_entity("triangle ABCD")), NotationError);
    CHECK_THROWS_AS(canonical_entity(parse_entity("angle AB")), NotationError);
  }
}

TEST_CASE("relation taxonomy is a closed list") {
  // every listed token resolves, round-trips through its info entry
  static constexpr const char* tokens[] = {
      "midpoint", "foot-of-perpendicular", "intersection-point", "trisection-point", "endpoint",
      "perpendicular", "parallel", "oblique-intersection", "coincidence",
      "angle-bisector", "diagonal", "median", "altitude", "chord", "tangent", "diameter",
      "centroid", "orthocenter", "circumcenter", "incenter", "vertex", "circle-center",
      "disjoint", "tangency", "intersection", "containment", "congruence", "similarity",
      "concentric", "inscribed", "circumscribed"};
  CHECK(std::size(tokens) == kRelationCount);
  for (const char* token : tokens) {
    const auto name = relation_from_token(token);
    REQUIRE_MESSAGE(name.has_value(), token);
    CHECK(std::string(relation_info(*name).token) == token);
  }
  CHECK(relation_from_token("MIDPOINT").has_value());  // case-insensitive
  CHECK_FALSE(relation_from_token("adjacent").has_value());
  CHECK_FALSE(relation_from_token("between").has_value());

  // symmetric flag is a function of the name
  static constexpr const char* symmetric[] = {"parallel",   "perpendicular", "coincidence",
                                              "disjoint",   "tangency",      "intersection",
                                              "congruence", "similarity",    "concentric"};
  int symmetric_count = 0;
  for (int i = 0; i < kRelationCount; ++i) {
    if (relation_info(static_cast<RelationName>(i)).symmetric) ++symmetric_count;
  }
  CHECK(symmetric_count == static_cast<int>(std::size(symmetric)));
  for (const char* token : symmetric) {
    CHECK(relation_info(*relation_from_token(token)).symmetric);
  }
}

TEST_CASE("canonicalize: spec examples") {
  SUBCASE("symmetric relation sorts subjects") {
    const Keypoint kp = parse_keypoint_line("R: perpendicular(line CD; line AB)");
    CHECK(keypoint_line(kp) == "R: perpendicular(line AB; line CD)");
  }
  SUBCASE("element endpoint order") {
    CHECK(keypoint_line(parse_keypoint_line("E: segment BA")) == "E: segment AB");
  }
  SUBCASE("numerical subject canonicalization only") {
    CHECK(keypoint_line(parse_keypoint_line("N: length(segment BA) = 5 cm")) ==
          "N: length(segment AB) = 5 cm");
  }
  SUBCASE("arity mismatch") {
    SpatialK sk;
    sk.relation = RelationName::Midpoint;
    sk.subjects = {make_point("M")};
    CHECK_THROWS_AS(canonicalize(Keypoint{sk}), NotationError);
  }
  SUBCASE("subject kind mismatch") {
    // midpoint needs point + line-like
    SpatialK sk;
    sk.relation = RelationName::Midpoint;
    sk.subjects = {make_circle("O"), make_segment("A", "B")};
    CHECK_THROWS_AS(canonicalize(Keypoint{sk}), NotationError);
  }
}

TEST_CASE("canonicalization is idempotent and swap-invariant (10k generated)") {
  Gen gen(20250809);
  for (int i = 0; i < 10000; ++i) {
    const Keypoint kp = gen.keypoint();
    const Keypoint once = canonicalize(kp);
    const Keypoint twice = canonicalize(once);
    CHECK(keypoint_body(once) == keypoint_body(twice));
    CHECK(once == twice);

    if (const auto* sk = std::get_if<SpatialK>(&once.payload)) {
      if (relation_info(sk->relation).symmetric) {
        SpatialK swapped = *sk;
        std::swap(swapped.subjects[0], swapped.subjects[1]);
        CHECK(keypoint_body(canonicalize(Keypoint{swapped})) == keypoint_body(once));
      }
    }
  }
}

TEST_CASE("equivalence rules") {
  auto kp = [](const char* line) { return parse_keypoint_line(line); };

  CHECK(equivalent(kp("R: perpendicular(segment AB; segment CD)"),
                   kp("R: perpendicular(segment CD; segment AB)")));
  CHECK_FALSE(equivalent(kp("R: parallel(segment AB; segment CD)"),
                         kp("R: parallel(segment AB; segment EF)")));
  CHECK(equivalent(kp("N: length(segment AB) = 0.5"), kp("N: length(segment AB) = 1/2")));

  SUBCASE("units: equal, or exactly one side unitless") {
    CHECK(equivalent(kp("N: length(segment AB) = 5 cm"), kp("N: length(segment AB) = 5 cm")));
    CHECK(equivalent(kp("N: length(segment AB) = 5 cm"), kp("N: length(segment AB) = 5")));
    CHECK_FALSE(
        equivalent(kp("N: length(segment AB) = 5 cm"), kp("N: length(segment AB) = 5 degree")));
    CHECK_FALSE(equivalent(kp("N: length(segment AB) = 5 cm"), kp("N: length(segment AB) = 6")));
  }
  SUBCASE("expressions compare verbatim") {
    CHECK(equivalent(kp("N: area(triangle ABC) = expr: 2x"), kp("N: area(triangle ABC) = expr: 2x")));
    CHECK_FALSE(
        equivalent(kp("N: area(triangle ABC) = expr: 2x"), kp("N: area(triangle ABC) = expr: 2y")));
    CHECK_FALSE(equivalent(kp("N: area(triangle ABC) = expr: 2x"), kp("N: area(triangle ABC) = 2")));
  }
  SUBCASE("angle B and angle ABC stay distinct") {
    CHECK_FALSE(equivalent(kp("N: angle-measure(angle B) = 30"),
                           kp("N: angle-measure(angle ABC) = 30")));
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS((void)equivalent(kp("E: point A"), kp("R: midpoint(M; segment AB)")), Error);
  }
  SUBCASE("reflexive and symmetric on generated keypoints") {
    Gen gen(7);
    for (int i = 0; i < 500; ++i) {
      const Keypoint a = gen.keypoint();
      CHECK(equivalent(a, a));
      const Keypoint b = gen.keypoint(a.dimension());
      CHECK(equivalent(a, b) == equivalent(b, a));
    }
  }
}
