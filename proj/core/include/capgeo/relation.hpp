#pragma once

#include <optional>
#include <string_view>

#include "capgeo/entity.hpp"

namespace capgeo {

// Spatial relation taxonomy: a closed list of named relations across five
// families keyed by what their subjects are. Constructing any name outside
// this list fails.
enum class RelationFamily {
  PointLine,
  LineLine,
  LineShape,
  PointShape,
  ShapeShape,
};

enum class RelationName {
  // point-line: positional dependence between points and lines
  Midpoint,
  FootOfPerpendicular,
  IntersectionPoint,
  TrisectionPoint,
  Endpoint,
  // line-line
  Perpendicular,
  Parallel,
  ObliqueIntersection,
  Coincidence,
  // line-shape: structural connection between a line and a shape
  AngleBisector,
  Diagonal,
  Median,
  Altitude,
  Chord,
  Tangent,
  Diameter,
  // point-shape: characteristic position of a point relative to a shape
  Centroid,
  Orthocenter,
  Circumcenter,
  Incenter,
  Vertex,
  CircleCenter,
  // shape-shape: configuration among complete figures
  Disjoint,
  Tangency,
  Intersection,
  Containment,
  Congruence,
  Similarity,
  Concentric,
  Inscribed,
  Circumscribed,
};

inline constexpr int kRelationCount = 31;

struct RelationInfo {
  RelationName name;
  RelationFamily family;
  const char* token;  // notation spelling, e.g. "foot-of-perpendicular"
  int arity;
  bool symmetric;  // symmetric relations store subjects sorted
};

const RelationInfo& relation_info(RelationName name);

// Lookup by notation token (case-insensitive). nullopt for unknown names.
std::optional<RelationName> relation_from_token(std::string_view token);

}  // namespace capgeo
