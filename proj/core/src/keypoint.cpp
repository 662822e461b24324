#include "capgeo/keypoint.hpp"

#include <algorithm>
#include <cctype>

namespace capgeo {
namespace {

struct QuantityTok {
  Quantity q;
  const char* token;
};

constexpr QuantityTok kQuantities[] = {
    {Quantity::Length, "length"},         {Quantity::AngleMeasure, "angle-measure"},
    {Quantity::Area, "area"},             {Quantity::Radius, "radius"},
    {Quantity::Diameter, "diameter"},     {Quantity::Perimeter, "perimeter"},
    {Quantity::Coordinate, "coordinate"}, {Quantity::Ratio, "ratio"},
    {Quantity::Count, "count"},           {Quantity::Other, "other"},
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void check_subject_kinds(const RelationInfo& info, const std::vector<EntityRef>& subjects) {
  auto fail = [&](const char* what) {
    throw NotationError(NotationErrc::Arity,
                        std::string(info.token) + ": " + what);
  };
  switch (info.family) {
    case RelationFamily::PointLine:
      if (subjects[0].kind != EntityKind::Point) fail("first subject must be a point");
      for (std::size_t i = 1; i < subjects.size(); ++i) {
        if (!is_line_like(subjects[i].kind)) fail("subject must be line-like");
      }
      break;
    case RelationFamily::LineLine:
      for (const auto& s : subjects) {
        if (!is_line_like(s.kind)) fail("subjects must be line-like");
      }
      break;
    case RelationFamily::LineShape:
      if (!is_line_like(subjects[0].kind)) fail("first subject must be line-like");
      if (!is_shape_like(subjects[1].kind)) fail("second subject must be a shape");
      break;
    case RelationFamily::PointShape:
      if (subjects[0].kind != EntityKind::Point) fail("first subject must be a point");
      if (!is_shape_like(subjects[1].kind)) fail("second subject must be a shape");
      break;
    case RelationFamily::ShapeShape:
      for (const auto& s : subjects) {
        if (!is_shape_like(s.kind)) fail("subjects must be shapes");
      }
      break;
  }
}

std::string subjects_text(const std::vector<EntityRef>& subjects) {
  std::string out;
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    if (i > 0) out += "; ";
    out += subject_text(subjects[i]);
  }
  return out;
}

}  // namespace

const char* dimension_prefix(Dimension d) {
  switch (d) {
    case Dimension::Element: return "E";
    case Dimension::Spatial: return "R";
    case Dimension::Numerical: return "N";
  }
  return "?";
}

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::Element: return "element";
    case Dimension::Spatial: return "spatial";
    case Dimension::Numerical: return "numerical";
  }
  return "?";
}

const char* quantity_token(Quantity q) {
  for (const auto& entry : kQuantities) {
    if (entry.q == q) return entry.token;
  }
  return "?";
}

std::optional<Quantity> quantity_from_token(std::string_view token) {
  const std::string key = lower(std::string(token));
  for (const auto& entry : kQuantities) {
    if (key == entry.token) return entry.q;
  }
  return std::nullopt;
}

Keypoint make_element(EntityRef entity) {
  return canonicalize(Keypoint{ElementK{std::move(entity)}});
}

Keypoint make_spatial(RelationName relation, std::vector<EntityRef> subjects) {
  return canonicalize(Keypoint{SpatialK{relation, std::move(subjects)}});
}

Keypoint make_numerical(Quantity q, std::vector<EntityRef> subjects, Rational value,
                        std::string unit) {
  NumericalK n;
  n.quantity = q;
  n.subjects = std::move(subjects);
  n.comparator = q == Quantity::Ratio ? Comparator::RatioOf : Comparator::Equals;
  n.value = value;
  n.unit = std::move(unit);
  return canonicalize(Keypoint{std::move(n)});
}

Keypoint make_numerical_expr(Quantity q, std::vector<EntityRef> subjects, std::string expression) {
  NumericalK n;
  n.quantity = q;
  n.subjects = std::move(subjects);
  n.comparator = q == Quantity::Ratio ? Comparator::RatioOf : Comparator::Equals;
  n.expression = std::move(expression);
  return canonicalize(Keypoint{std::move(n)});
}

Keypoint canonicalize(const Keypoint& kp) {
  Keypoint out = kp;
  if (auto* e = std::get_if<ElementK>(&out.payload)) {
    e->entity = canonical_entity(e->entity);
    return out;
  }
  if (auto* s = std::get_if<SpatialK>(&out.payload)) {
    const RelationInfo& info = relation_info(s->relation);
    if (static_cast<int>(s->subjects.size()) != info.arity) {
      throw NotationError(NotationErrc::Arity,
                          std::string(info.token) + " expects " + std::to_string(info.arity) +
                              " subjects, got " + std::to_string(s->subjects.size()));
    }
    for (auto& subject : s->subjects) subject = canonical_entity(subject);
    check_subject_kinds(info, s->subjects);
    if (info.symmetric) {
      std::sort(s->subjects.begin(), s->subjects.end(),
                [](const EntityRef& a, const EntityRef& b) {
                  return subject_text(a) < subject_text(b);
                });
    }
    return out;
  }
  auto& n = std::get<NumericalK>(out.payload);
  if (n.subjects.empty()) {
    throw NotationError(NotationErrc::Arity, "numerical keypoint needs at least one subject");
  }
  const bool has_value = n.value.has_value();
  const bool has_expr = !n.expression.empty();
  if (has_value == has_expr) {
    throw NotationError(NotationErrc::Syntax,
                        "numerical keypoint needs exactly one of value/expression");
  }
  for (auto& subject : n.subjects) subject = canonical_entity(subject);
  n.comparator = n.quantity == Quantity::Ratio ? Comparator::RatioOf : Comparator::Equals;
  n.unit = lower(std::move(n.unit));
  if (has_expr) n.unit.clear();
  return out;
}

std::string keypoint_body(const Keypoint& kp) {
  const Keypoint canon = canonicalize(kp);
  if (const auto* e = std::get_if<ElementK>(&canon.payload)) {
    return entity_text(e->entity);
  }
  if (const auto* s = std::get_if<SpatialK>(&canon.payload)) {
    return std::string(relation_info(s->relation).token) + "(" + subjects_text(s->subjects) + ")";
  }
  const auto& n = std::get<NumericalK>(canon.payload);
  std::string out = std::string(quantity_token(n.quantity)) + "(" + subjects_text(n.subjects) +
                    ") = ";
  if (n.value) {
    out += n.value->str();
    if (!n.unit.empty()) out += " " + n.unit;
  } else {
    out += "expr: " + n.expression;
  }
  return out;
}

std::string keypoint_line(const Keypoint& kp) {
  return std::string(dimension_prefix(kp.dimension())) + ": " + keypoint_body(kp);
}

bool equivalent(const Keypoint& a, const Keypoint& b) {
  if (a.dimension() != b.dimension()) {
    throw Error("equivalent: dimension mismatch");
  }
  const Keypoint ca = canonicalize(a);
  const Keypoint cb = canonicalize(b);
  if (ca.dimension() != Dimension::Numerical) {
    return keypoint_body(ca) == keypoint_body(cb);
  }
  const auto& na = std::get<NumericalK>(ca.payload);
  const auto& nb = std::get<NumericalK>(cb.payload);
  if (na.quantity != nb.quantity || na.comparator != nb.comparator) return false;
  if (na.subjects.size() != nb.subjects.size()) return false;
  for (std::size_t i = 0; i < na.subjects.size(); ++i) {
    if (!(na.subjects[i] == nb.subjects[i])) return false;
  }
  // Units must agree, except that a unitless side matches a united one.
  if (!na.unit.empty() && !nb.unit.empty() && na.unit != nb.unit) return false;
  if (na.value && nb.value) return *na.value == *nb.value;
  if (!na.value && !nb.value) return na.expression == nb.expression;
  return false;
}

bool KeypointSet::insert(const Keypoint& kp) {
  const Keypoint canon = canonicalize(kp);
  const std::string key = keypoint_body(canon);
  auto& dim = const_cast<std::map<std::string, Keypoint>&>(items(canon.dimension()));
  return dim.emplace(key, canon).second;
}

const std::map<std::string, Keypoint>& KeypointSet::items(Dimension d) const {
  switch (d) {
    case Dimension::Element: return elements_;
    case Dimension::Spatial: return spatial_;
    case Dimension::Numerical: return numerical_;
  }
  return elements_;
}

std::size_t KeypointSet::total_size() const {
  return elements_.size() + spatial_.size() + numerical_.size();
}

bool KeypointSet::contains(Dimension d, const std::string& canonical_body) const {
  return items(d).count(canonical_body) > 0;
}

}  // namespace capgeo
