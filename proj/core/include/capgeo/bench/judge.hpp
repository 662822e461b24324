#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "capgeo/config.hpp"
#include "capgeo/gateway/gateway.hpp"
#include "capgeo/matching.hpp"
#include "capgeo/notation.hpp"
#include "capgeo/pipeline/prompts.hpp"

namespace capgeo::bench {

// Raised when a judge cannot produce usable output (unparseable after the
// reformat retry, or an empty caption).
class JudgeError : public Error {
public:
  explicit JudgeError(const std::string& what) : Error(what) {}
};

enum class CaptionRole { GroundTruth, Response };

struct ExtractionOutcome {
  KeypointSet set;
  std::vector<std::string> transcripts;  // raw judge replies, first to last
};

struct MatchOutcome {
  std::array<MatchResult, 3> results;       // element, spatial, numerical
  std::vector<std::string> rejected_lines;  // claims not present in ground truth
  std::vector<std::string> transcripts;
};

// Keypoint extraction + covered-item matching. The oracle variant makes the
// whole evaluation deterministic and offline; the model variant sends the
// shipped judge prompts through the gateway.
class Judge {
public:
  virtual ~Judge() = default;
  virtual std::string id() const = 0;
  virtual ExtractionOutcome extract(const std::string& caption, CaptionRole role) = 0;
  virtual MatchOutcome match(const KeypointSet& response, const KeypointSet& gt) = 0;
};

// Deterministic judge: captions must already be written in keypoint
// notation; matching is the exact maximum-matching oracle.
class OracleJudge : public Judge {
public:
  std::string id() const override { return "oracle"; }
  ExtractionOutcome extract(const std::string& caption, CaptionRole role) override;
  MatchOutcome match(const KeypointSet& response, const KeypointSet& gt) override;
};

// Judge backed by a chat model. Judge output is constrained to keypoint
// notation; one reformat retry re-prompts with the parse error. Covered-item
// claims are validated against the ground-truth set: hallucinated items are
// rejected, duplicates count once, and per-dimension tp never exceeds the
// ground-truth or response dimension size.
class ModelJudge : public Judge {
public:
  ModelJudge(gateway::Gateway& gw, const ToolkitConfig& config, std::string model_id,
             pipeline::PromptLibrary prompts);

  std::string id() const override { return model_id_; }
  ExtractionOutcome extract(const std::string& caption, CaptionRole role) override;
  MatchOutcome match(const KeypointSet& response, const KeypointSet& gt) override;

private:
  std::string ask(const std::string& prompt, std::vector<std::string>& transcripts);

  gateway::Gateway& gw_;
  std::string model_id_;
  std::string provider_id_;
  std::string model_name_;
  gateway::Decoding decoding_;
  pipeline::PromptLibrary prompts_;
};

// Validation shared by every judge-style matcher: keeps only claimed lines
// that name real ground-truth keypoints, deduplicates on the ground-truth
// side, and pairs validated items with response items positionally.
MatchOutcome validate_covered_claims(const std::vector<std::string>& claimed_lines,
                                     const KeypointSet& response, const KeypointSet& gt);

}  // namespace capgeo::bench
