#include "capgeo/matching.hpp"

#include <algorithm>

namespace capgeo {
namespace {

std::vector<const Keypoint*> sorted_items(const KeypointSet& set, Dimension dim) {
  std::vector<const Keypoint*> out;
  out.reserve(set.items(dim).size());
  for (const auto& [body, kp] : set.items(dim)) out.push_back(&kp);
  return out;  // map iteration is already sorted by canonical body
}

bool augment(int gi, const std::vector<std::vector<int>>& adj, std::vector<int>& match_resp,
             std::vector<char>& visited) {
  for (int rj : adj[static_cast<std::size_t>(gi)]) {
    if (visited[static_cast<std::size_t>(rj)]) continue;
    visited[static_cast<std::size_t>(rj)] = 1;
    if (match_resp[static_cast<std::size_t>(rj)] == -1 ||
        augment(match_resp[static_cast<std::size_t>(rj)], adj, match_resp, visited)) {
      match_resp[static_cast<std::size_t>(rj)] = gi;
      return true;
    }
  }
  return false;
}

}  // namespace

MatchResult oracle_match(const KeypointSet& response, const KeypointSet& gt, Dimension dim) {
  const auto gt_items = sorted_items(gt, dim);
  const auto resp_items = sorted_items(response, dim);

  MatchResult result;
  result.dimension = dim;
  result.gt_count = static_cast<int>(gt_items.size());
  result.response_count = static_cast<int>(resp_items.size());

  std::vector<std::vector<int>> adj(gt_items.size());
  for (std::size_t gi = 0; gi < gt_items.size(); ++gi) {
    for (std::size_t rj = 0; rj < resp_items.size(); ++rj) {
      if (equivalent(*gt_items[gi], *resp_items[rj])) {
        adj[gi].push_back(static_cast<int>(rj));
      }
    }
  }

  std::vector<int> match_resp(resp_items.size(), -1);
  for (std::size_t gi = 0; gi < gt_items.size(); ++gi) {
    std::vector<char> visited(resp_items.size(), 0);
    augment(static_cast<int>(gi), adj, match_resp, visited);
  }

  for (std::size_t rj = 0; rj < resp_items.size(); ++rj) {
    if (match_resp[rj] != -1) {
      result.pairs.emplace_back(match_resp[rj], static_cast<int>(rj));
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  result.tp_count = static_cast<int>(result.pairs.size());
  return result;
}

}  // namespace capgeo
