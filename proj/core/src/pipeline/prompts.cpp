#include "capgeo/pipeline/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "capgeo/digest.hpp"

namespace capgeo::pipeline {

namespace {

constexpr const char* kCaption = R"(You are given the figure of a geometry problem. Analyze the figure and translate its visual content into explicit textual constraints, written in the style of a formal mathematical problem statement, so that the description integrates seamlessly with the problem text and fully specifies the figure on its own.

Cover, following the construction order of the figure: every labeled element (points, segments, lines, rays, angles, arcs, circles, polygons, coordinate axes), every spatial relation between elements (midpoints, feet of perpendiculars, parallel and perpendicular pairs, tangents, inscribed figures, and the like), and every numerical fact the figure shows (lengths, angle measures, areas, coordinates), including dashed lines and specially marked parts. State only what the figure shows. Do not solve the problem and do not add inferred conclusions.
{{question_section}})";

constexpr const char* kReasoning =
    R"(Solve the following geometry problem.{{caption_section}}

Problem:
{{question}}

{{answer_instruction}})";

constexpr const char* kCaptionSection = R"(

A textual description of the figure is provided. Treat it as an accurate account of the figure.

Figure description:
{{caption}})";

constexpr const char* kExtractCommon = R"(Decompose it into atomic keypoints along three dimensions and emit them in the exact line notation below, one keypoint per line, with no other text.

Dimensions:
  E: geometric elements with their letter identifiers (point, segment, line, ray, angle, arc, circle, polygon shapes such as triangle or square, axis).
  R: spatial relations between elements. Use exactly one of: midpoint, foot-of-perpendicular, intersection-point, trisection-point, endpoint, perpendicular, parallel, oblique-intersection, coincidence, angle-bisector, diagonal, median, altitude, chord, tangent, diameter, centroid, orthocenter, circumcenter, incenter, vertex, circle-center, disjoint, tangency, intersection, containment, congruence, similarity, concentric, inscribed, circumscribed.
  N: numerical facts binding a value to elements. Use one of: length, angle-measure, area, radius, diameter, perimeter, coordinate, ratio, count, other.

Notation, one keypoint per line:
  E: <kind> <labels>                            e.g.  E: point M   |   E: segment AB   |   E: triangle ABC
  R: <relation>(<subject>; <subject>)           e.g.  R: midpoint(M; segment AB)
  N: <quantity>(<subject>) = <value> [<unit>]   e.g.  N: length(segment AB) = 5 cm
  N: <quantity>(<subject>) = expr: <text>       for symbolic values, e.g.  N: area(triangle ABC) = expr: 2x

A bare subject token is a point. List every element explicitly, including elements that also appear inside relations. Emit nothing except keypoint lines.)";

constexpr const char* kMatch = R"(You are given two keypoint sets for the same geometry figure: the ground-truth set and the set extracted from a model-generated description. For each dimension (E, R, N), identify which ground-truth keypoints are semantically covered by the model set. Treat differently worded but equivalent statements as covered; do not credit a keypoint whose subjects differ.

Output exactly the covered ground-truth keypoint lines, verbatim as they appear in the ground-truth set, one per line, and nothing else. Never output a model-set line, and never output the same ground-truth line twice.

Ground-truth keypoints:
{{gt_keypoints}}

Model keypoints:
{{response_keypoints}})";

std::string read_file_or(const std::filesystem::path& path, const std::string& fallback) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return fallback;
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

}  // namespace

std::string render_template(const std::string& tpl,
                            const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tpl.size());
  std::size_t pos = 0;
  while (pos < tpl.size()) {
    const auto open = tpl.find("{{", pos);
    if (open == std::string::npos) {
      out.append(tpl, pos, std::string::npos);
      break;
    }
    const auto close = tpl.find("}}", open + 2);
    if (close == std::string::npos) {
      out.append(tpl, pos, std::string::npos);
      break;
    }
    out.append(tpl, pos, open - pos);
    const std::string name = tpl.substr(open + 2, close - open - 2);
    const auto it = vars.find(name);
    if (it != vars.end()) {
      out += it->second;
    } else {
      out.append(tpl, open, close + 2 - open);
    }
    pos = close + 2;
  }
  return out;
}

PromptLibrary PromptLibrary::defaults() {
  PromptLibrary p;
  p.caption = kCaption;
  p.reasoning = kReasoning;
  p.caption_section = kCaptionSection;
  p.extract_gt = std::string("You will be given the reference description of a geometry figure, "
                             "written by an expert annotator. ") +
                 kExtractCommon + "\n\nReference description:\n{{caption}}";
  p.extract_response =
      std::string("You will be given a model-generated description of a geometry figure. "
                  "Extract only facts the text actually states; do not correct, complete, or "
                  "reinterpret it. ") +
      kExtractCommon + "\n\nModel description:\n{{caption}}";
  p.match = kMatch;
  p.answer_choice =
      "End your response with the option letter of the correct answer, for example: "
      "\"The answer is (B).\"";
  p.answer_numeric =
      "End your response with the final numeric answer, for example: \"The answer is 42.\"";
  p.answer_text = "End your response with the final answer on its own line.";
  return p;
}

PromptLibrary PromptLibrary::load(const std::string& dir) {
  PromptLibrary p = defaults();
  if (dir.empty()) return p;
  const std::filesystem::path base(dir);
  p.caption = read_file_or(base / "caption.txt", p.caption);
  p.reasoning = read_file_or(base / "reasoning.txt", p.reasoning);
  p.extract_gt = read_file_or(base / "extract_gt.txt", p.extract_gt);
  p.extract_response = read_file_or(base / "extract_response.txt", p.extract_response);
  p.match = read_file_or(base / "match.txt", p.match);
  return p;
}

std::string PromptLibrary::digest() const {
  return sha256_hex(caption + "\x1f" + reasoning + "\x1f" + caption_section + "\x1f" + extract_gt +
                    "\x1f" + extract_response + "\x1f" + match + "\x1f" + answer_choice + "\x1f" +
                    answer_numeric + "\x1f" + answer_text);
}

}  // namespace capgeo::pipeline
