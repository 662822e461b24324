#include "capgeo/entity.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace capgeo {
namespace {

struct KindSpec {
  EntityKind kind;
  int min_labels;
  int max_labels;  // -1 = unbounded
  bool point_labels;
};

// Specialized polygon names accepted as kind tokens, with their vertex count
// (0 = any >= 3).
const std::map<std::string, int, std::less<>>& shape_names() {
  static const std::map<std::string, int, std::less<>> names = {
      {"triangle", 3},      {"quadrilateral", 4}, {"parallelogram", 4},
      {"trapezoid", 4},     {"rectangle", 4},     {"square", 4},
      {"rhombus", 4},       {"pentagon", 5},      {"hexagon", 6},
  };
  return names;
}

const std::map<std::string, KindSpec, std::less<>>& kind_table() {
  static const std::map<std::string, KindSpec, std::less<>> table = {
      {"point", {EntityKind::Point, 1, 1, true}},
      {"segment", {EntityKind::Segment, 2, 2, true}},
      {"line", {EntityKind::Line, 1, 2, true}},
      {"ray", {EntityKind::Ray, 2, 2, true}},
      {"angle", {EntityKind::Angle, 1, 3, true}},
      {"arc", {EntityKind::Arc, 2, 3, true}},
      {"circle", {EntityKind::Circle, 1, 1, true}},
      {"polygon-shape", {EntityKind::PolygonShape, 3, -1, true}},
      {"polygon", {EntityKind::PolygonShape, 3, -1, true}},
      {"axis", {EntityKind::Axis, 1, 1, false}},
      {"curve", {EntityKind::Curve, 1, 1, false}},
      {"region", {EntityKind::Region, 1, 1, false}},
  };
  return table;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool all_alpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalpha(c) != 0;
  });
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Uppercase single alphabetic labels; names stay verbatim.
std::string normalize_label(const std::string& label, bool point_labels) {
  if (point_labels && label.size() == 1 && std::isalpha(static_cast<unsigned char>(label[0]))) {
    return std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(label[0]))));
  }
  return label;
}

// Lexicographically minimal rotation of the cycle, over both orientations.
std::vector<std::string> minimal_cycle(const std::vector<std::string>& labels) {
  std::vector<std::string> best;
  auto consider = [&](std::vector<std::string> seq) {
    for (std::size_t shift = 0; shift < seq.size(); ++shift) {
      if (best.empty() || seq < best) best = seq;
      std::rotate(seq.begin(), seq.begin() + 1, seq.end());
    }
  };
  consider(labels);
  std::vector<std::string> rev(labels.rbegin(), labels.rend());
  consider(std::move(rev));
  return best;
}

[[noreturn]] void arity_error(const std::string& msg) {
  throw NotationError(NotationErrc::Arity, msg);
}

int expected_polygon_labels(const std::string& shape_name) {
  if (shape_name.empty()) return 0;
  const auto it = shape_names().find(shape_name);
  return it == shape_names().end() ? 0 : it->second;
}

}  // namespace

bool is_line_like(EntityKind k) {
  return k == EntityKind::Segment || k == EntityKind::Line || k == EntityKind::Ray ||
         k == EntityKind::Axis;
}

bool is_shape_like(EntityKind k) {
  switch (k) {
    case EntityKind::Circle:
    case EntityKind::PolygonShape:
    case EntityKind::Angle:
    case EntityKind::Arc:
    case EntityKind::Curve:
    case EntityKind::Region:
      return true;
    default:
      return false;
  }
}

const char* entity_kind_token(EntityKind k) {
  switch (k) {
    case EntityKind::Point: return "point";
    case EntityKind::Segment: return "segment";
    case EntityKind::Line: return "line";
    case EntityKind::Ray: return "ray";
    case EntityKind::Angle: return "angle";
    case EntityKind::Arc: return "arc";
    case EntityKind::Circle: return "circle";
    case EntityKind::PolygonShape: return "polygon-shape";
    case EntityKind::Axis: return "axis";
    case EntityKind::Curve: return "curve";
    case EntityKind::Region: return "region";
  }
  return "?";
}

EntityRef canonical_entity(const EntityRef& e) {
  EntityRef out = e;
  if (out.labels.empty()) arity_error("entity needs at least one label");
  for (const auto& label : out.labels) {
    if (label.empty()) arity_error("empty entity label");
  }

  const bool point_labels =
      !(out.kind == EntityKind::Axis || out.kind == EntityKind::Curve ||
        out.kind == EntityKind::Region || (out.kind == EntityKind::Line && out.labels.size() == 1));
  for (auto& label : out.labels) label = normalize_label(label, point_labels);

  const auto n = out.labels.size();
  switch (out.kind) {
    case EntityKind::Point:
    case EntityKind::Circle:
    case EntityKind::Axis:
    case EntityKind::Curve:
    case EntityKind::Region:
      if (n != 1) arity_error(std::string(entity_kind_token(out.kind)) + " expects 1 label");
      break;
    case EntityKind::Segment:
      if (n != 2) arity_error("segment expects 2 labels");
      std::sort(out.labels.begin(), out.labels.end());
      break;
    case EntityKind::Line:
      if (n != 1 && n != 2) arity_error("line expects 1 or 2 labels");
      if (n == 2) std::sort(out.labels.begin(), out.labels.end());
      break;
    case EntityKind::Ray:
      if (n != 2) arity_error("ray expects 2 labels");
      break;  // ordered: origin then direction
    case EntityKind::Angle:
      if (n != 1 && n != 3) arity_error("angle expects 1 or 3 labels");
      if (n == 3 && out.labels[0] > out.labels[2]) std::swap(out.labels[0], out.labels[2]);
      break;
    case EntityKind::Arc:
      if (n != 2 && n != 3) arity_error("arc expects 2 or 3 labels");
      if (n == 2) std::sort(out.labels.begin(), out.labels.end());
      if (n == 3 && out.labels[0] > out.labels[2]) std::swap(out.labels[0], out.labels[2]);
      break;
    case EntityKind::PolygonShape: {
      const int expected = expected_polygon_labels(out.shape_name);
      if (expected > 0 && n != static_cast<std::size_t>(expected)) {
        arity_error(out.shape_name + " expects " + std::to_string(expected) + " labels");
      }
      if (expected == 0 && n < 3) arity_error("polygon expects at least 3 labels");
      out.labels = minimal_cycle(out.labels);
      break;
    }
  }

  if (out.kind != EntityKind::PolygonShape) out.shape_name.clear();
  return out;
}

std::string entity_text(const EntityRef& e) {
  std::string head = e.kind == EntityKind::PolygonShape && !e.shape_name.empty()
                         ? e.shape_name
                         : entity_kind_token(e.kind);
  const bool compact = std::all_of(e.labels.begin(), e.labels.end(),
                                   [](const std::string& l) { return l.size() == 1; });
  std::string labels;
  for (std::size_t i = 0; i < e.labels.size(); ++i) {
    if (i > 0 && !compact) labels += ' ';
    labels += e.labels[i];
  }
  return head + " " + labels;
}

std::string subject_text(const EntityRef& e) {
  if (e.kind == EntityKind::Point) return e.labels.front();
  return entity_text(e);
}

EntityRef parse_entity(std::string_view text) {
  const auto tokens = split_ws(text);
  if (tokens.empty()) {
    throw NotationError(NotationErrc::Syntax, "empty entity");
  }

  EntityRef e;
  std::size_t label_start = 1;
  const std::string head = lower(tokens.front());
  if (const auto kind_it = kind_table().find(head); kind_it != kind_table().end()) {
    e.kind = kind_it->second.kind;
  } else if (shape_names().count(head) > 0) {
    e.kind = EntityKind::PolygonShape;
    e.shape_name = head;
  } else if (tokens.size() == 1) {
    // Bare subject token: a point label.
    e.kind = EntityKind::Point;
    label_start = 0;
  } else {
    throw NotationError(NotationErrc::Syntax, "unknown entity kind '" + tokens.front() + "'");
  }

  if (label_start >= tokens.size() && label_start != 0) {
    throw NotationError(NotationErrc::Syntax, "entity '" + std::string(text) + "' has no labels");
  }

  std::vector<std::string> raw(tokens.begin() + static_cast<std::ptrdiff_t>(label_start),
                               tokens.end());
  // "segment AB" style: one run of letters names one point per character
  // for kinds built from several points. A non-alpha token ("c1") stays a
  // single name label.
  const bool multi_point =
      e.kind == EntityKind::Segment || e.kind == EntityKind::Ray || e.kind == EntityKind::Arc ||
      e.kind == EntityKind::PolygonShape || e.kind == EntityKind::Line ||
      e.kind == EntityKind::Angle;
  if (raw.size() == 1 && raw[0].size() > 1 && multi_point && all_alpha(raw[0])) {
    std::vector<std::string> split;
    for (char c : raw[0]) split.emplace_back(1, c);
    raw = std::move(split);
  }
  e.labels = std::move(raw);
  return e;
}

EntityRef make_point(std::string label) {
  return canonical_entity({EntityKind::Point, {std::move(label)}, {}});
}

EntityRef make_segment(std::string a, std::string b) {
  return canonical_entity({EntityKind::Segment, {std::move(a), std::move(b)}, {}});
}

EntityRef make_angle(std::vector<std::string> labels) {
  return canonical_entity({EntityKind::Angle, std::move(labels), {}});
}

EntityRef make_circle(std::string label) {
  return canonical_entity({EntityKind::Circle, {std::move(label)}, {}});
}

EntityRef make_polygon(std::string shape_name, std::vector<std::string> labels) {
  return canonical_entity({EntityKind::PolygonShape, std::move(labels), std::move(shape_name)});
}

}  // namespace capgeo
