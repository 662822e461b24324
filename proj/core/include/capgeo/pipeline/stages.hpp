#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capgeo/config.hpp"
#include "capgeo/gateway/gateway.hpp"
#include "capgeo/pipeline/content_store.hpp"
#include "capgeo/pipeline/manifest.hpp"
#include "capgeo/pipeline/prompts.hpp"
#include "capgeo/pipeline/record.hpp"

namespace capgeo::pipeline {

// Builds the captioning request: the shipped template, the question text,
// and exactly one image attachment. Throws DataError when the record has
// no image digest.
gateway::ChatRequest build_caption_prompt(const ProblemRecord& record, const PromptLibrary& prompts,
                                          const std::string& provider_id,
                                          const std::string& model_name,
                                          const gateway::Decoding& decoding);

// Builds the reasoning request for one of the three modes:
//   direct-vision:          question + image, no caption text
//   caption-with-image:     question + image + caption
//   caption-without-image:  question + caption, no image attachment
// plus the answer-format instruction for the record's answer type.
gateway::ChatRequest build_reasoning_prompt(const ProblemRecord& record,
                                            const std::optional<CaptionRecord>& caption,
                                            ReasoningMode mode, const PromptLibrary& prompts,
                                            const std::string& provider_id,
                                            const std::string& model_name,
                                            const gateway::Decoding& decoding);

struct StageOptions {
  std::optional<std::size_t> sample_n;
  std::uint64_t sample_seed = 0;
  int max_in_flight = 4;
  std::string dataset_digest;
};

struct CaptionStage {
  std::vector<CaptionRecord> captions;
  RunManifest manifest;
};

CaptionStage run_caption_stage(const std::vector<ProblemRecord>& records,
                               const std::string& captioner, gateway::Gateway& gw,
                               const ToolkitConfig& config, const PromptLibrary& prompts,
                               const StageOptions& options);

struct ReasonStage {
  std::vector<ReasoningRecord> rows;
  RunManifest manifest;
};

// Captions are keyed by problem id; required for the caption modes.
ReasonStage run_reason_stage(const std::vector<ProblemRecord>& records, ReasoningMode mode,
                             const std::string& reasoner,
                             const std::map<std::string, CaptionRecord>& captions,
                             gateway::Gateway& gw, const ToolkitConfig& config,
                             const PromptLibrary& prompts, const StageOptions& options);

// Fills grading fields in place from the gold answers; rows whose gateway
// call failed stay ungraded. Returns the number graded.
int grade_rows(std::vector<ReasoningRecord>& rows, const std::vector<ProblemRecord>& records);

std::map<std::string, CaptionRecord> captions_by_problem(const std::vector<CaptionRecord>& records);

}  // namespace capgeo::pipeline
