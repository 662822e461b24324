#include <doctest.h>

#include <algorithm>

#include "capgeo/matching.hpp"
#include "capgeo/scoring.hpp"
#include "support.hpp"

using namespace capgeo;
using testsupport::Gen;

namespace {

KeypointSet from_lines(std::initializer_list<const char*> lines) {
  KeypointSet set;
  for (const char* line : lines) set.insert(parse_keypoint_line(line));
  return set;
}

}  // namespace

TEST_CASE("oracle match basics") {
  SUBCASE("identity up to order") {
    const auto gt = from_lines({"E: point A", "E: point B"});
    const auto resp = from_lines({"E: point B", "E: point A"});
    const auto m = oracle_match(resp, gt, Dimension::Element);
    CHECK(m.tp_count == 2);
    CHECK(m.gt_count == 2);
    CHECK(m.pairs.size() == 2);
  }
  SUBCASE("disjoint") {
    const auto gt = from_lines({"E: point A"});
    const auto m = oracle_match(KeypointSet{}, gt, Dimension::Element);
    CHECK(m.tp_count == 0);
    CHECK(m.gt_count == 1);
    CHECK(m.response_count == 0);
  }
  SUBCASE("pairs are one-to-one") {
    // two unitless response values cannot both match the same gt item
    const auto gt = from_lines({"N: length(segment AB) = 5 cm"});
    const auto resp =
        from_lines({"N: length(segment AB) = 5", "N: length(segment AB) = 5 mm"});
    const auto m = oracle_match(resp, gt, Dimension::Numerical);
    CHECK(m.tp_count == 1);
  }
  SUBCASE("unit-lenient matching needs augmenting paths") {
    // gt: {5 cm, 5 degree}; response: {5 (unitless), 5 cm}
    // the unitless item must yield "5 cm" to the exact match and take "5 degree"
    const auto gt = from_lines(
        {"N: length(segment AB) = 5 cm", "N: length(segment AB) = 5 degree"});
    const auto resp =
        from_lines({"N: length(segment AB) = 5", "N: length(segment AB) = 5 cm"});
    const auto m = oracle_match(resp, gt, Dimension::Numerical);
    CHECK(m.tp_count == 2);
  }
}

TEST_CASE("matching agrees with exhaustive enumeration on 1000 random pairs") {
  Gen gen(1337);
  int nonzero = 0;
  for (int i = 0; i < 1000; ++i) {
    const KeypointSet gt = gen.set(6);
    const KeypointSet resp = gen.set(6);
    for (Dimension d : kAllDimensions) {
      const auto m = oracle_match(resp, gt, d);
      const int expected = testsupport::brute_force_max_matching(
          testsupport::dimension_items(gt, d), testsupport::dimension_items(resp, d));
      REQUIRE(m.tp_count == expected);
      if (expected > 0) ++nonzero;
    }
  }
  CHECK(nonzero > 300);  // the generator pools are small enough to collide often
}

TEST_CASE("permutation invariance via insertion order") {
  Gen gen(99);
  for (int i = 0; i < 200; ++i) {
    std::vector<Keypoint> items;
    for (int k = 0; k < 5; ++k) items.push_back(gen.keypoint(Dimension::Spatial));
    KeypointSet forward, backward;
    for (const auto& kp : items) forward.insert(kp);
    for (auto it = items.rbegin(); it != items.rend(); ++it) backward.insert(*it);
    REQUIRE(forward == backward);

    const KeypointSet gt = gen.set(4);
    CHECK(oracle_match(forward, gt, Dimension::Spatial).tp_count ==
          oracle_match(backward, gt, Dimension::Spatial).tp_count);
  }
}

TEST_CASE("recall scores") {
  MatchResult m;
  m.dimension = Dimension::Element;
  m.tp_count = 3;
  m.gt_count = 4;
  CHECK(*recall_score(m) == doctest::Approx(0.75));

  m.tp_count = 0;
  m.gt_count = 0;
  CHECK_FALSE(recall_score(m).has_value());  // undefined, not an error

  const auto gt = from_lines({"E: point A", "E: point B", "R: parallel(line AB; line CD)"});
  for (Dimension d : {Dimension::Element, Dimension::Spatial}) {
    const auto self = oracle_match(gt, gt, d);
    CHECK(*recall_score(self) == doctest::Approx(1.0));
  }
}

TEST_CASE("dimension scores and mean over defined dimensions") {
  DimensionScores s;
  s.element = 1.0;
  s.spatial = 1.0;
  s.numerical = 1.0;
  CHECK(*s.mean() == doctest::Approx(1.0));

  s = {};
  s.element = 0.6;
  s.spatial = 0.3;
  CHECK(*s.mean() == doctest::Approx(0.45));

  s = {};
  CHECK_FALSE(s.mean().has_value());
}

TEST_CASE("crafted caption pair: covers (1, 2, 0) of (2, 2, 1)") {
  const auto gt = from_lines({
      "E: point A",
      "E: segment AB",
      "R: midpoint(M; segment AB)",
      "R: parallel(segment AB; segment CD)",
      "N: length(segment AB) = 5",
  });
  const auto resp = from_lines({
      "E: point A",
      "R: midpoint(M; segment AB)",
      "R: parallel(segment CD; segment AB)",
      "N: length(segment AB) = 6",
  });
  const auto e = oracle_match(resp, gt, Dimension::Element);
  const auto r = oracle_match(resp, gt, Dimension::Spatial);
  const auto n = oracle_match(resp, gt, Dimension::Numerical);
  // cross-checked against the exhaustive oracle
  CHECK(e.tp_count == testsupport::brute_force_max_matching(
                          testsupport::dimension_items(gt, Dimension::Element),
                          testsupport::dimension_items(resp, Dimension::Element)));
  const auto scores = dimension_scores(e, r, n);
  CHECK(*scores.element == doctest::Approx(0.5));
  CHECK(*scores.spatial == doctest::Approx(1.0));
  CHECK(*scores.numerical == doctest::Approx(0.0));
  CHECK(*scores.mean() == doctest::Approx(0.5));
}

TEST_CASE("recall is monotone in the response set") {
  Gen gen(555);
  for (int i = 0; i < 200; ++i) {
    const KeypointSet gt = gen.set(4);
    KeypointSet resp = gen.set(3);
    const Dimension d = Dimension::Spatial;
    const int before = oracle_match(resp, gt, d).tp_count;
    resp.insert(gen.keypoint(d));
    const int after = oracle_match(resp, gt, d).tp_count;
    CHECK(after >= before);
  }
}

TEST_CASE("aggregate_scores reproduces the published grid arithmetic") {
  auto overall_row = [](double e, double r, double n) {
    ScoreRow row;
    row.record_id = "x";
    row.class_tag = "PG";
    row.difficulty_tag = "T1";
    row.scores.element = e / 100.0;
    row.scores.spatial = r / 100.0;
    row.scores.numerical = n / 100.0;
    return std::vector<ScoreRow>{row};
  };

  struct Case {
    double e, r, n, avg;
  };
  // overall dimension triples and their published averages
  static constexpr Case cases[] = {
      {63.4, 56.1, 26.0, 48.5},
      {54.1, 30.3, 13.3, 32.6},
      {57.1, 34.1, 11.7, 34.3},
      {51.8, 23.3, 8.2, 27.8},
  };
  for (const auto& c : cases) {
    const auto aggregate = aggregate_scores(overall_row(c.e, c.r, c.n));
    REQUIRE(aggregate.avg.has_value());
    const double avg_percent = round_half_up_1dp(*aggregate.avg * 100.0);
    CHECK(avg_percent == doctest::Approx(c.avg).epsilon(0.0005));
    CHECK(std::abs(avg_percent - c.avg) <= 0.05);
  }
}

TEST_CASE("aggregate grid: grouping, undefined cells, empty input") {
  std::vector<ScoreRow> rows;
  auto add = [&](const char* cls, const char* diff, double e, std::optional<double> n) {
    ScoreRow row;
    row.record_id = std::string(cls) + diff;
    row.class_tag = cls;
    row.difficulty_tag = diff;
    row.scores.element = e;
    row.scores.numerical = n;
    rows.push_back(row);
  };
  add("AG", "T1", 1.0, 0.5);
  add("AG", "T2", 0.5, std::nullopt);
  add("PG", "T1", 0.0, std::nullopt);

  const auto aggregate = aggregate_scores(rows);
  CHECK(aggregate.row_count == 3);
  // element: AG column mean of {1.0, 0.5}
  CHECK(*aggregate.cells[0][0] == doctest::Approx(0.75));
  // element overall mean of all three
  CHECK(*aggregate.cells[0][BenchAggregate::kOverallColumn] == doctest::Approx(0.5));
  // numerical: only one defined contribution
  CHECK(*aggregate.cells[2][BenchAggregate::kOverallColumn] == doctest::Approx(0.5));
  // spatial never defined -> absent
  CHECK_FALSE(aggregate.cells[1][BenchAggregate::kOverallColumn].has_value());
  // SG column untouched
  CHECK_FALSE(aggregate.cells[0][2].has_value());

  CHECK(aggregate_scores({}).row_count == 0);
  CHECK_FALSE(aggregate_scores({}).avg.has_value());
}

TEST_CASE("percent rounding is half-up at one decimal") {
  // 1/16 = 6.25%: exactly representable, so this pins half-up (6.3, not
  // the to-even 6.2) without float-representation wobble.
  CHECK(format_percent(0.0625) == "6.3");
  CHECK(format_percent(0.1875) == "18.8");  // 3/16 = 18.75%
  CHECK(format_percent(0.32564) == "32.6");
  CHECK(format_percent(0.32540) == "32.5");
  CHECK(format_percent(std::nullopt) == "-");
  CHECK(format_percent(1.0) == "100.0");
}

TEST_CASE("score row csv round trip") {
  Gen gen(31);
  std::vector<ScoreRow> rows;
  for (int i = 0; i < 8; ++i) {
    const KeypointSet gt = gen.set(4);
    const KeypointSet resp = gen.set(4);
    std::array<MatchResult, 3> matches;
    for (int d = 0; d < 3; ++d) {
      matches[static_cast<std::size_t>(d)] = oracle_match(resp, gt, static_cast<Dimension>(d));
    }
    rows.push_back(make_score_row("rec-" + std::to_string(i), "PG", "T2", matches));
  }
  const std::string csv = score_rows_to_csv(rows);
  const auto parsed = score_rows_from_csv(csv);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].record_id == rows[i].record_id);
    CHECK(parsed[i].tp == rows[i].tp);
    CHECK(parsed[i].gt == rows[i].gt);
    CHECK(parsed[i].scores.element.has_value() == rows[i].scores.element.has_value());
  }
  CHECK(score_rows_to_csv(parsed) == csv);
}
