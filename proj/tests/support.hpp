#pragma once

// Shared test utilities: random keypoint generators, the brute-force
// matching oracle, and the independent Pearson reference. Everything here
// is test-only and stays independent of the implementation paths it checks.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "capgeo/keypoint.hpp"
#include "capgeo/notation.hpp"

namespace testsupport {

using namespace capgeo;

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return below(100) < percent; }

  std::string point_label() { return std::string(1, static_cast<char>('A' + below(6))); }

  EntityRef point() { return make_point(point_label()); }

  EntityRef segment() {
    const int a = below(6);
    int b = below(6);
    if (b == a) b = (b + 1) % 6;
    return make_segment(std::string(1, static_cast<char>('A' + a)),
                        std::string(1, static_cast<char>('A' + b)));
  }

  EntityRef axis() {
    return canonical_entity({EntityKind::Axis, {below(2) == 0 ? "x" : "y"}, {}});
  }

  EntityRef line_like() {
    switch (below(3)) {
      case 0: return segment();
      case 1: {
        EntityRef e = segment();
        e.kind = EntityKind::Line;
        return canonical_entity(e);
      }
      default: return axis();
    }
  }

  EntityRef circle() { return make_circle(std::string(1, static_cast<char>('O' + below(2)))); }

  EntityRef triangle() {
    int a = below(4);
    return make_polygon("triangle", {std::string(1, static_cast<char>('A' + a)),
                                     std::string(1, static_cast<char>('A' + (a + 1) % 6)),
                                     std::string(1, static_cast<char>('A' + (a + 2) % 6))});
  }

  EntityRef angle() {
    if (chance(40)) return make_angle({point_label()});
    int a = below(4);
    return make_angle({std::string(1, static_cast<char>('A' + a)),
                       std::string(1, static_cast<char>('A' + (a + 1) % 6)),
                       std::string(1, static_cast<char>('A' + (a + 2) % 6))});
  }

  EntityRef shape_like() {
    switch (below(3)) {
      case 0: return circle();
      case 1: return triangle();
      default: return angle();
    }
  }

  Keypoint element() {
    switch (below(5)) {
      case 0: return make_element(point());
      case 1: return make_element(segment());
      case 2: return make_element(circle());
      case 3: return make_element(triangle());
      default: return make_element(axis());
    }
  }

  Keypoint spatial() {
    static constexpr RelationName names[] = {
        RelationName::Midpoint,      RelationName::Endpoint,
        RelationName::Perpendicular, RelationName::Parallel,
        RelationName::Tangent,       RelationName::Chord,
        RelationName::Vertex,        RelationName::CircleCenter,
        RelationName::Tangency,      RelationName::Congruence,
        RelationName::Inscribed,     RelationName::IntersectionPoint,
    };
    const RelationName name = names[below(static_cast<int>(std::size(names)))];
    const auto& info = relation_info(name);
    std::vector<EntityRef> subjects;
    switch (info.family) {
      case RelationFamily::PointLine:
        subjects.push_back(point());
        for (int i = 1; i < info.arity; ++i) subjects.push_back(line_like());
        break;
      case RelationFamily::LineLine:
        subjects = {line_like(), line_like()};
        break;
      case RelationFamily::LineShape:
        subjects = {line_like(), name == RelationName::Chord || name == RelationName::Tangent
                                     ? circle()
                                     : shape_like()};
        break;
      case RelationFamily::PointShape:
        subjects = {point(), name == RelationName::CircleCenter ? circle() : shape_like()};
        break;
      case RelationFamily::ShapeShape:
        subjects = {shape_like(), shape_like()};
        break;
    }
    return make_spatial(name, std::move(subjects));
  }

  Keypoint numerical() {
    static constexpr Quantity quantities[] = {Quantity::Length, Quantity::AngleMeasure,
                                              Quantity::Area, Quantity::Radius, Quantity::Ratio};
    const Quantity q = quantities[below(5)];
    std::vector<EntityRef> subjects;
    switch (q) {
      case Quantity::Length: subjects = {segment()}; break;
      case Quantity::AngleMeasure: subjects = {angle()}; break;
      case Quantity::Area: subjects = {triangle()}; break;
      case Quantity::Radius: subjects = {circle()}; break;
      default: subjects = {segment(), segment()}; break;
    }
    if (chance(15)) {
      static constexpr const char* exprs[] = {"2x", "x+1", "3y/2"};
      return make_numerical_expr(q, std::move(subjects), exprs[below(3)]);
    }
    const Rational value(below(19) - 9, 1 + below(4));
    std::string unit;
    if (chance(40)) unit = q == Quantity::AngleMeasure ? "degree" : "cm";
    return make_numerical(q, std::move(subjects), value, unit);
  }

  Keypoint keypoint() {
    switch (below(3)) {
      case 0: return element();
      case 1: return spatial();
      default: return numerical();
    }
  }

  Keypoint keypoint(Dimension d) {
    switch (d) {
      case Dimension::Element: return element();
      case Dimension::Spatial: return spatial();
      default: return numerical();
    }
  }

  KeypointSet set(int max_per_dim) {
    KeypointSet s;
    for (Dimension d : kAllDimensions) {
      const int n = below(max_per_dim + 1);
      for (int i = 0; i < n; ++i) s.insert(keypoint(d));
    }
    return s;
  }

  std::mt19937_64& rng() { return rng_; }

private:
  std::mt19937_64 rng_;
};

// Exhaustive maximum one-to-one matching: tries every injective assignment
// of ground-truth items to response items.
inline int brute_force_max_matching(const std::vector<Keypoint>& gt,
                                    const std::vector<Keypoint>& resp) {
  std::vector<char> used(resp.size(), 0);
  int best = 0;
  std::function<void(std::size_t, int)> go = [&](std::size_t gi, int matched) {
    if (matched + static_cast<int>(gt.size() - gi) <= best) return;  // prune
    if (gi == gt.size()) {
      best = std::max(best, matched);
      return;
    }
    go(gi + 1, matched);  // leave gt[gi] unmatched
    for (std::size_t rj = 0; rj < resp.size(); ++rj) {
      if (!used[rj] && equivalent(gt[gi], resp[rj])) {
        used[rj] = 1;
        go(gi + 1, matched + 1);
        used[rj] = 0;
      }
    }
  };
  go(0, 0);
  return best;
}

inline std::vector<Keypoint> dimension_items(const KeypointSet& set, Dimension d) {
  std::vector<Keypoint> out;
  for (const auto& [body, kp] : set.items(d)) out.push_back(kp);
  return out;
}

// Independent Pearson route: the computational formula in long double,
// distinct from the shipped two-pass implementation.
inline std::optional<double> reference_pearson(
    const std::vector<std::pair<double, double>>& points) {
  const auto n = static_cast<long double>(points.size());
  if (points.size() < 2) return std::nullopt;
  long double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxy += static_cast<long double>(x) * y;
    sxx += static_cast<long double>(x) * x;
    syy += static_cast<long double>(y) * y;
  }
  const long double num = n * sxy - sx * sy;
  const long double den2x = n * sxx - sx * sx;
  const long double den2y = n * syy - sy * sy;
  if (den2x <= 0 || den2y <= 0) return std::nullopt;
  return static_cast<double>(num / (std::sqrt(den2x) * std::sqrt(den2y)));
}

inline std::string fixture_path(const std::string& relative) {
  return std::string(CAPGEO_FIXTURES_DIR) + "/" + relative;
}

}  // namespace testsupport
