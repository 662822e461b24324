#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "capgeo/entity.hpp"
#include "capgeo/rational.hpp"
#include "capgeo/relation.hpp"

namespace capgeo {

enum class Dimension { Element, Spatial, Numerical };

const char* dimension_prefix(Dimension d);  // "E", "R", "N"
const char* dimension_name(Dimension d);    // "element", "spatial", "numerical"

// A named geometric object present in the figure.
struct ElementK {
  EntityRef entity;
  friend bool operator==(const ElementK&, const ElementK&) = default;
};

// A taxonomy relation with its subjects; arity is fixed per relation and
// symmetric relations keep subjects sorted in canonical form.
struct SpatialK {
  RelationName relation = RelationName::Midpoint;
  std::vector<EntityRef> subjects;
  friend bool operator==(const SpatialK&, const SpatialK&) = default;
};

enum class Quantity {
  Length,
  AngleMeasure,
  Area,
  Radius,
  Diameter,
  Perimeter,
  Coordinate,
  Ratio,
  Count,
  Other,
};

const char* quantity_token(Quantity q);
std::optional<Quantity> quantity_from_token(std::string_view token);

enum class Comparator { Equals, RatioOf };

// A quantitative fact binding a value (or a verbatim symbolic expression)
// to one or more entities. Exactly one of value/expression is present.
struct NumericalK {
  Quantity quantity = Quantity::Length;
  std::vector<EntityRef> subjects;
  Comparator comparator = Comparator::Equals;
  std::optional<Rational> value;
  std::string expression;
  std::string unit;  // lowercase token, empty when unitless
  friend bool operator==(const NumericalK&, const NumericalK&) = default;
};

struct Keypoint {
  std::variant<ElementK, SpatialK, NumericalK> payload;

  Dimension dimension() const {
    return static_cast<Dimension>(payload.index());
  }
  friend bool operator==(const Keypoint&, const Keypoint&) = default;
};

Keypoint make_element(EntityRef entity);
Keypoint make_spatial(RelationName relation, std::vector<EntityRef> subjects);
Keypoint make_numerical(Quantity q, std::vector<EntityRef> subjects, Rational value,
                        std::string unit = "");
Keypoint make_numerical_expr(Quantity q, std::vector<EntityRef> subjects, std::string expression);

// Normalizes a structurally valid keypoint to its canonical form:
// entities canonicalized, symmetric relation subjects sorted, units
// lowercased. Idempotent and semantics-preserving. Throws NotationError
// on arity mismatches or out-of-taxonomy relation names.
Keypoint canonicalize(const Keypoint& kp);

// Canonical notation body without the dimension prefix, e.g.
// "midpoint(M; segment AB)". Input is canonicalized first.
std::string keypoint_body(const Keypoint& kp);

// Full notation line, e.g. "R: midpoint(M; segment AB)".
std::string keypoint_line(const Keypoint& kp);

// True iff the two keypoints denote the same fact: equal canonical forms,
// with numerical values compared exactly as rationals after the unit check
// (units equal, or exactly one side unitless). Throws on dimension mismatch.
bool equivalent(const Keypoint& a, const Keypoint& b);

// The (E, R, N) sets extracted from one caption. Members are canonical and
// deduplicated per dimension by canonical body.
class KeypointSet {
public:
  // Canonicalizes and inserts; duplicates collapse. Returns false on duplicate.
  bool insert(const Keypoint& kp);

  const std::map<std::string, Keypoint>& items(Dimension d) const;
  std::size_t size(Dimension d) const { return items(d).size(); }
  std::size_t total_size() const;
  bool empty() const { return total_size() == 0; }
  bool contains(Dimension d, const std::string& canonical_body) const;

  friend bool operator==(const KeypointSet&, const KeypointSet&) = default;

private:
  std::map<std::string, Keypoint> elements_;
  std::map<std::string, Keypoint> spatial_;
  std::map<std::string, Keypoint> numerical_;
};

inline constexpr Dimension kAllDimensions[] = {Dimension::Element, Dimension::Spatial,
                                               Dimension::Numerical};

}  // namespace capgeo
