#pragma once

#include <string>
#include <string_view>

#include "capgeo/keypoint.hpp"

namespace capgeo {

// Line-oriented keypoint notation. One keypoint per line:
//
//   E: <kind> <labels>                          element
//   R: <relation>(<subject>; <subject>...)      spatial relation
//   N: <quantity>(<subject>...) = <value> [unit]  numerical fact
//   N: <quantity>(<subject>...) = expr: <text>    symbolic value, verbatim
//
// Subjects are entities; a bare token is a point label. Comment lines start
// with '#'; blank lines are ignored. Parsed keypoints are canonical and
// duplicates collapse.

// Parses a single keypoint line (with its "E:"/"R:"/"N:" prefix).
// Throws NotationError without a line number.
Keypoint parse_keypoint_line(std::string_view line);

// Parses a whole document. Throws NotationError carrying the 1-based line
// number of the first offending line. An empty document is an empty set.
KeypointSet parse_keypoint_document(std::string_view text);

// Deterministic emission: dimensions in E, R, N order, lines sorted by
// canonical body within each dimension, '\n'-separated with no trailing
// newline. parse(serialize(ks)) == ks for every canonical set.
std::string serialize_keypoints(const KeypointSet& ks);

}  // namespace capgeo
