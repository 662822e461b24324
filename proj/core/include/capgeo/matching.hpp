#pragma once

#include <utility>
#include <vector>

#include "capgeo/keypoint.hpp"

namespace capgeo {

// One-to-one matching of a response dimension against ground truth.
// Indices refer to the dimension's items in sorted canonical order.
struct MatchResult {
  Dimension dimension = Dimension::Element;
  std::vector<std::pair<int, int>> pairs;  // (gt index, response index)
  int tp_count = 0;
  int gt_count = 0;
  int response_count = 0;
};

// Maximum-cardinality one-to-one matching under equivalent(), computed with
// augmenting paths over the equivalence graph. Deterministic: ties break by
// sorted canonical order of ground-truth items, then of response items.
// The unit-lenient numerical rule makes equivalence non-transitive across
// set members, so this is a real matching, not a set intersection.
MatchResult oracle_match(const KeypointSet& response, const KeypointSet& gt, Dimension dim);

}  // namespace capgeo
