#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "capgeo/errors.hpp"

namespace capgeo {

enum class EntityKind {
  Point,
  Segment,
  Line,
  Ray,
  Angle,
  Arc,
  Circle,
  PolygonShape,
  Axis,
  Curve,
  Region,
};

// One geometric entity as named in a caption: a kind, its labels, and for
// polygons an optional specialized shape name ("triangle", "square", ...).
//
// Labels are point labels (one per vertex/endpoint) for point-built kinds,
// or a single verbatim name label for named kinds (axis x, curve c, a line
// called l). Single-letter point labels are normalized to uppercase;
// multi-character names are kept verbatim.
struct EntityRef {
  EntityKind kind = EntityKind::Point;
  std::vector<std::string> labels;
  std::string shape_name;  // nonempty only for PolygonShape specializations

  friend bool operator==(const EntityRef&, const EntityRef&) = default;
};

// Canonical form:
//   - segment / 2-label line / 2-label arc: endpoints sorted
//   - 3-label angle / 3-label arc: outer labels sorted around the middle one
//   - polygon: vertex cycle rotated/reflected to its lexicographically
//     minimal sequence
//   - ray: kept as written (direction matters)
// Throws NotationError (Arity) when the label count is invalid for the kind.
EntityRef canonical_entity(const EntityRef& e);

// Canonical notation text, e.g. "segment AB", "triangle ABC", "axis x".
std::string entity_text(const EntityRef& e);

// Canonical text as a relation subject: bare label for points ("M"),
// entity_text otherwise.
std::string subject_text(const EntityRef& e);

// Parses "kind labels" element text, e.g. "segment AB", "parallelogram BCDA".
// A single token without a kind ("M") is a point. Does not canonicalize.
EntityRef parse_entity(std::string_view text);

// Kind groups used by the relation taxonomy.
bool is_line_like(EntityKind k);
bool is_shape_like(EntityKind k);

const char* entity_kind_token(EntityKind k);

// Convenience constructors (canonicalized).
EntityRef make_point(std::string label);
EntityRef make_segment(std::string a, std::string b);
EntityRef make_angle(std::vector<std::string> labels);
EntityRef make_circle(std::string label);
EntityRef make_polygon(std::string shape_name, std::vector<std::string> labels);

}  // namespace capgeo
