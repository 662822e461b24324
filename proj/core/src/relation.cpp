#include "capgeo/relation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <string>

namespace capgeo {
namespace {

using F = RelationFamily;

constexpr std::array<RelationInfo, kRelationCount> kTable = {{
    {RelationName::Midpoint, F::PointLine, "midpoint", 2, false},
    {RelationName::FootOfPerpendicular, F::PointLine, "foot-of-perpendicular", 2, false},
    {RelationName::IntersectionPoint, F::PointLine, "intersection-point", 3, false},
    {RelationName::TrisectionPoint, F::PointLine, "trisection-point", 2, false},
    {RelationName::Endpoint, F::PointLine, "endpoint", 2, false},

    {RelationName::Perpendicular, F::LineLine, "perpendicular", 2, true},
    {RelationName::Parallel, F::LineLine, "parallel", 2, true},
    {RelationName::ObliqueIntersection, F::LineLine, "oblique-intersection", 2, false},
    {RelationName::Coincidence, F::LineLine, "coincidence", 2, true},

    {RelationName::AngleBisector, F::LineShape, "angle-bisector", 2, false},
    {RelationName::Diagonal, F::LineShape, "diagonal", 2, false},
    {RelationName::Median, F::LineShape, "median", 2, false},
    {RelationName::Altitude, F::LineShape, "altitude", 2, false},
    {RelationName::Chord, F::LineShape, "chord", 2, false},
    {RelationName::Tangent, F::LineShape, "tangent", 2, false},
    {RelationName::Diameter, F::LineShape, "diameter", 2, false},

    {RelationName::Centroid, F::PointShape, "centroid", 2, false},
    {RelationName::Orthocenter, F::PointShape, "orthocenter", 2, false},
    {RelationName::Circumcenter, F::PointShape, "circumcenter", 2, false},
    {RelationName::Incenter, F::PointShape, "incenter", 2, false},
    {RelationName::Vertex, F::PointShape, "vertex", 2, false},
    {RelationName::CircleCenter, F::PointShape, "circle-center", 2, false},

    {RelationName::Disjoint, F::ShapeShape, "disjoint", 2, true},
    {RelationName::Tangency, F::ShapeShape, "tangency", 2, true},
    {RelationName::Intersection, F::ShapeShape, "intersection", 2, true},
    {RelationName::Containment, F::ShapeShape, "containment", 2, false},
    {RelationName::Congruence, F::ShapeShape, "congruence", 2, true},
    {RelationName::Similarity, F::ShapeShape, "similarity", 2, true},
    {RelationName::Concentric, F::ShapeShape, "concentric", 2, true},
    {RelationName::Inscribed, F::ShapeShape, "inscribed", 2, false},
    {RelationName::Circumscribed, F::ShapeShape, "circumscribed", 2, false},
}};

}  // namespace

const RelationInfo& relation_info(RelationName name) {
  return kTable[static_cast<std::size_t>(name)];
}

std::optional<RelationName> relation_from_token(std::string_view token) {
  static const auto by_token = [] {
    std::map<std::string, RelationName, std::less<>> m;
    for (const auto& info : kTable) m.emplace(info.token, info.name);
    return m;
  }();
  std::string key(token);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto it = by_token.find(key);
  if (it == by_token.end()) return std::nullopt;
  return it->second;
}

}  // namespace capgeo
