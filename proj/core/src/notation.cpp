#include "capgeo/notation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace capgeo {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_subjects(std::string_view inner) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= inner.size()) {
    const auto sep = inner.find(';', start);
    if (sep == std::string_view::npos) {
      out.push_back(trim(inner.substr(start)));
      break;
    }
    out.push_back(trim(inner.substr(start, sep - start)));
    start = sep + 1;
  }
  return out;
}

// "name(subject; subject)" -> name + subject list. Shared by R and N bodies.
std::pair<std::string_view, std::vector<std::string_view>> parse_call(std::string_view body,
                                                                      std::string_view& rest) {
  const auto open = body.find('(');
  if (open == std::string_view::npos || open == 0) {
    throw NotationError(NotationErrc::Syntax, "expected 'name(...)', got '" + std::string(body) + "'");
  }
  const auto close = body.find(')', open);
  if (close == std::string_view::npos) {
    throw NotationError(NotationErrc::Syntax, "missing ')' in '" + std::string(body) + "'");
  }
  rest = body.substr(close + 1);
  const std::string_view name = trim(body.substr(0, open));
  const std::string_view inner = body.substr(open + 1, close - open - 1);
  auto subjects = split_subjects(inner);
  if (subjects.size() == 1 && subjects[0].empty()) subjects.clear();
  for (const auto& s : subjects) {
    if (s.empty()) {
      throw NotationError(NotationErrc::Syntax, "empty subject in '" + std::string(body) + "'");
    }
  }
  return {name, std::move(subjects)};
}

Keypoint parse_spatial_body(std::string_view body) {
  std::string_view rest;
  auto [name, subject_texts] = parse_call(body, rest);
  if (!trim(rest).empty()) {
    throw NotationError(NotationErrc::Syntax,
                        "trailing text after relation: '" + std::string(trim(rest)) + "'");
  }
  const auto relation = relation_from_token(name);
  if (!relation) {
    throw NotationError(NotationErrc::UnknownRelation,
                        "unknown relation '" + std::string(name) + "'");
  }
  SpatialK sk;
  sk.relation = *relation;
  for (const auto& text : subject_texts) sk.subjects.push_back(parse_entity(text));
  return canonicalize(Keypoint{std::move(sk)});
}

Keypoint parse_numerical_body(std::string_view body) {
  std::string_view rest;
  auto [name, subject_texts] = parse_call(body, rest);
  const auto quantity = quantity_from_token(name);
  if (!quantity) {
    throw NotationError(NotationErrc::Syntax, "unknown quantity '" + std::string(name) + "'");
  }

  rest = trim(rest);
  if (rest.empty() || rest.front() != '=') {
    throw NotationError(NotationErrc::Syntax, "numerical keypoint needs '= value'");
  }
  rest = trim(rest.substr(1));
  if (rest.empty()) {
    throw NotationError(NotationErrc::Syntax, "missing value after '='");
  }

  NumericalK nk;
  nk.quantity = *quantity;
  for (const auto& text : subject_texts) nk.subjects.push_back(parse_entity(text));

  if (rest.starts_with("expr:")) {
    std::string_view expr = rest.substr(5);
    if (expr.starts_with(" ")) expr.remove_prefix(1);
    if (trim(expr).empty()) {
      throw NotationError(NotationErrc::Syntax, "empty expression after 'expr:'");
    }
    nk.expression = std::string(expr);
    return canonicalize(Keypoint{std::move(nk)});
  }

  std::vector<std::string> tokens;
  {
    std::istringstream in{std::string(rest)};
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
  }
  std::optional<Rational> value;
  if (tokens.size() == 1 || tokens.size() == 2) value = Rational::parse(tokens[0]);
  if (value) {
    nk.value = *value;
    if (tokens.size() == 2) nk.unit = tokens[1];
  } else {
    // Not an integer / fraction / terminating decimal: keep the whole
    // right-hand side as a verbatim symbolic expression.
    nk.expression = std::string(rest);
  }
  return canonicalize(Keypoint{std::move(nk)});
}

}  // namespace

Keypoint parse_keypoint_line(std::string_view line) {
  std::string_view s = trim(line);
  if (s.size() < 2 || (s[0] != 'E' && s[0] != 'R' && s[0] != 'N') || s[1] != ':') {
    throw NotationError(NotationErrc::Syntax,
                        "keypoint line must start with 'E:', 'R:' or 'N:'");
  }
  const char prefix = s[0];
  std::string_view body = s.substr(2);
  if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
  body = trim(body);
  if (body.empty()) {
    throw NotationError(NotationErrc::Syntax, "empty keypoint body");
  }
  switch (prefix) {
    case 'E': return canonicalize(Keypoint{ElementK{parse_entity(body)}});
    case 'R': return parse_spatial_body(body);
    default: return parse_numerical_body(body);
  }
}

KeypointSet parse_keypoint_document(std::string_view text) {
  KeypointSet set;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = eol == std::string_view::npos ? text.substr(pos)
                                                          : text.substr(pos, eol - pos);
    ++line_no;
    const std::string_view stripped = trim(line);
    if (!stripped.empty() && stripped.front() != '#') {
      try {
        set.insert(parse_keypoint_line(stripped));
      } catch (const NotationError& e) {
        throw e.at_line(line_no);
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return set;
}

std::string serialize_keypoints(const KeypointSet& ks) {
  std::string out;
  for (Dimension d : kAllDimensions) {
    for (const auto& [body, kp] : ks.items(d)) {
      if (!out.empty()) out += '\n';
      out += dimension_prefix(d);
      out += ": ";
      out += body;
    }
  }
  return out;
}

}  // namespace capgeo
