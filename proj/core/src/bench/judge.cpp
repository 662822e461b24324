#include "capgeo/bench/judge.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace capgeo::bench {

using pipeline::render_template;

namespace {

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trimmed(line);
    if (!t.empty() && t[0] != '#') out.push_back(t);
  }
  return out;
}

}  // namespace

ExtractionOutcome OracleJudge::extract(const std::string& caption, CaptionRole) {
  if (trimmed(caption).empty()) throw JudgeError("empty caption");
  ExtractionOutcome out;
  out.set = parse_keypoint_document(caption);
  return out;
}

MatchOutcome OracleJudge::match(const KeypointSet& response, const KeypointSet& gt) {
  MatchOutcome out;
  for (int d = 0; d < 3; ++d) {
    out.results[static_cast<std::size_t>(d)] =
        oracle_match(response, gt, static_cast<Dimension>(d));
  }
  return out;
}

MatchOutcome validate_covered_claims(const std::vector<std::string>& claimed_lines,
                                     const KeypointSet& response, const KeypointSet& gt) {
  MatchOutcome out;
  std::array<std::vector<int>, 3> covered;  // validated gt indices per dimension

  // Index of canonical body -> position in the sorted dimension.
  std::array<std::map<std::string, int>, 3> gt_index;
  for (int d = 0; d < 3; ++d) {
    int i = 0;
    for (const auto& [body, kp] : gt.items(static_cast<Dimension>(d))) {
      gt_index[static_cast<std::size_t>(d)][body] = i++;
    }
  }

  std::array<std::set<int>, 3> seen;
  for (const auto& line : claimed_lines) {
    Keypoint kp;
    try {
      kp = parse_keypoint_line(line);
    } catch (const NotationError&) {
      out.rejected_lines.push_back(line + "  [unparseable]");
      continue;
    }
    const auto d = static_cast<std::size_t>(kp.dimension());
    const std::string body = keypoint_body(kp);
    const auto it = gt_index[d].find(body);
    if (it == gt_index[d].end()) {
      out.rejected_lines.push_back(line + "  [not a ground-truth keypoint]");
      continue;
    }
    if (!seen[d].insert(it->second).second) {
      out.rejected_lines.push_back(line + "  [duplicate claim]");
      continue;
    }
    covered[d].push_back(it->second);
  }

  for (int d = 0; d < 3; ++d) {
    const auto dim = static_cast<Dimension>(d);
    const auto di = static_cast<std::size_t>(d);
    auto& result = out.results[di];
    result.dimension = dim;
    result.gt_count = static_cast<int>(gt.size(dim));
    result.response_count = static_cast<int>(response.size(dim));
    std::sort(covered[di].begin(), covered[di].end());
    // A claim set larger than the response dimension cannot be one-to-one;
    // cap and report the excess.
    while (static_cast<int>(covered[di].size()) > result.response_count) {
      out.rejected_lines.push_back(std::string(dimension_prefix(dim)) +
                                   ": claim count exceeds response set  [capped]");
      covered[di].pop_back();
    }
    for (std::size_t i = 0; i < covered[di].size(); ++i) {
      result.pairs.emplace_back(covered[di][i], static_cast<int>(i));
    }
    result.tp_count = static_cast<int>(result.pairs.size());
  }
  return out;
}

ModelJudge::ModelJudge(gateway::Gateway& gw, const ToolkitConfig& config, std::string model_id,
                       pipeline::PromptLibrary prompts)
    : gw_(gw),
      model_id_(std::move(model_id)),
      decoding_(config.decoding),
      prompts_(std::move(prompts)) {
  const auto route = config.route_model(model_id_);
  provider_id_ = route.first;
  model_name_ = route.second;
}

std::string ModelJudge::ask(const std::string& prompt, std::vector<std::string>& transcripts) {
  gateway::ChatRequest req;
  req.provider_id = provider_id_;
  req.model_id = model_name_;
  req.decoding = decoding_;
  req.messages.push_back({"user", prompt, ""});
  const auto resp = gw_.complete(req);
  transcripts.push_back(resp.text);
  return resp.text;
}

ExtractionOutcome ModelJudge::extract(const std::string& caption, CaptionRole role) {
  if (trimmed(caption).empty()) throw JudgeError("empty caption");
  const std::string& tpl =
      role == CaptionRole::GroundTruth ? prompts_.extract_gt : prompts_.extract_response;
  const std::string prompt = render_template(tpl, {{"caption", caption}});

  ExtractionOutcome out;
  std::string reply = ask(prompt, out.transcripts);
  try {
    out.set = parse_keypoint_document(reply);
    return out;
  } catch (const NotationError& first) {
    const std::string retry_prompt =
        prompt +
        "\n\nYour previous output was not valid keypoint notation (" + first.what() +
        "). Emit the keypoints again, strictly one per line in the notation, with no other text.";
    reply = ask(retry_prompt, out.transcripts);
    try {
      out.set = parse_keypoint_document(reply);
      return out;
    } catch (const NotationError& second) {
      throw JudgeError(std::string("judge output unparseable after retry: ") + second.what());
    }
  }
}

MatchOutcome ModelJudge::match(const KeypointSet& response, const KeypointSet& gt) {
  const std::string prompt =
      render_template(prompts_.match, {{"gt_keypoints", serialize_keypoints(gt)},
                                       {"response_keypoints", serialize_keypoints(response)}});
  std::vector<std::string> transcripts;
  std::string reply = ask(prompt, transcripts);

  // The covered list is validated line by line, so "parse failure" here
  // means no line parsed at all; retry once with the complaint attached.
  auto count_parseable = [](const std::vector<std::string>& lines) {
    int n = 0;
    for (const auto& line : lines) {
      try {
        parse_keypoint_line(line);
        ++n;
      } catch (const NotationError&) {
      }
    }
    return n;
  };

  std::vector<std::string> lines = nonempty_lines(reply);
  if (!lines.empty() && count_parseable(lines) == 0) {
    const std::string retry_prompt =
        prompt + "\n\nYour previous output contained no valid keypoint lines. Emit only the "
                 "covered ground-truth keypoint lines, verbatim, one per line.";
    reply = ask(retry_prompt, transcripts);
    lines = nonempty_lines(reply);
    if (!lines.empty() && count_parseable(lines) == 0) {
      throw JudgeError("judge match output unparseable after retry");
    }
  }

  MatchOutcome out = validate_covered_claims(lines, response, gt);
  out.transcripts = std::move(transcripts);
  return out;
}

}  // namespace capgeo::bench
