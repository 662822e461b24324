#include "capgeo/pipeline/stages.hpp"

#include <algorithm>

#include "capgeo/pipeline/grading.hpp"
#include "capgeo/pipeline/sampling.hpp"

namespace capgeo::pipeline {

using gateway::ChatMessage;
using gateway::ChatRequest;

gateway::ChatRequest build_caption_prompt(const ProblemRecord& record, const PromptLibrary& prompts,
                                          const std::string& provider_id,
                                          const std::string& model_name,
                                          const gateway::Decoding& decoding) {
  if (record.image_digest.empty()) {
    throw DataError("record " + record.id + " has no image for captioning");
  }
  const std::string question_section =
      record.question.empty() ? "" : "\nProblem statement:\n" + record.question;
  ChatRequest req;
  req.provider_id = provider_id;
  req.model_id = model_name;
  req.decoding = decoding;
  ChatMessage msg;
  msg.role = "user";
  msg.text = render_template(prompts.caption, {{"question_section", question_section}});
  msg.image_digest = record.image_digest;
  req.messages.push_back(std::move(msg));
  return req;
}

gateway::ChatRequest build_reasoning_prompt(const ProblemRecord& record,
                                            const std::optional<CaptionRecord>& caption,
                                            ReasoningMode mode, const PromptLibrary& prompts,
                                            const std::string& provider_id,
                                            const std::string& model_name,
                                            const gateway::Decoding& decoding) {
  const bool wants_caption = mode != ReasoningMode::DirectVision;
  const bool wants_image = mode != ReasoningMode::CaptionWithoutImage;
  if (wants_caption && !caption) {
    throw DataError("mode " + std::string(mode_token(mode)) + " requires a caption for record " +
                    record.id);
  }
  if (wants_image && record.image_digest.empty()) {
    throw DataError("mode " + std::string(mode_token(mode)) + " requires an image for record " +
                    record.id);
  }

  std::string caption_section;
  if (wants_caption) {
    caption_section = render_template(prompts.caption_section, {{"caption", caption->caption}});
  }
  const std::string* instruction = &prompts.answer_text;
  if (record.answer_type == AnswerType::Choice) instruction = &prompts.answer_choice;
  if (record.answer_type == AnswerType::Numeric) instruction = &prompts.answer_numeric;

  ChatRequest req;
  req.provider_id = provider_id;
  req.model_id = model_name;
  req.decoding = decoding;
  ChatMessage msg;
  msg.role = "user";
  msg.text = render_template(prompts.reasoning, {{"question", record.question},
                                                 {"caption_section", caption_section},
                                                 {"answer_instruction", *instruction}});
  if (wants_image) msg.image_digest = record.image_digest;
  req.messages.push_back(std::move(msg));
  return req;
}

namespace {

std::vector<ProblemRecord> apply_sampling(const std::vector<ProblemRecord>& records,
                                          const StageOptions& options) {
  if (!options.sample_n) return records;
  return sample_subset(records, *options.sample_n, options.sample_seed);
}

RunManifest base_manifest(const std::string& stage, const ToolkitConfig& config,
                          const PromptLibrary& prompts, const StageOptions& options) {
  RunManifest m;
  m.stage = stage;
  m.dataset_digest = options.dataset_digest;
  m.decoding = config.decoding;
  m.prompts_digest = prompts.digest();
  m.mathvista_filter = config.mathvista_filter;
  if (options.sample_n) {
    m.sample_n = options.sample_n;
    m.sample_seed = options.sample_seed;
  }
  m.stamp_now();
  return m;
}

}  // namespace

CaptionStage run_caption_stage(const std::vector<ProblemRecord>& records,
                               const std::string& captioner, gateway::Gateway& gw,
                               const ToolkitConfig& config, const PromptLibrary& prompts,
                               const StageOptions& options) {
  const auto subset = apply_sampling(records, options);
  const auto [provider_id, model_name] = config.route_model(captioner);

  CaptionStage stage;
  stage.manifest = base_manifest("caption", config, prompts, options);
  stage.manifest.captioner = captioner;
  const std::string run_id = stage.manifest.run_id();

  std::vector<ChatRequest> requests;
  requests.reserve(subset.size());
  for (const auto& record : subset) {
    requests.push_back(
        build_caption_prompt(record, prompts, provider_id, model_name, config.decoding));
  }
  const auto responses = gw.batch(requests, options.max_in_flight);

  for (std::size_t i = 0; i < subset.size(); ++i) {
    CaptionRecord c;
    c.problem_id = subset[i].id;
    c.captioner = captioner;
    c.fingerprint = gateway::cache_key(requests[i]);
    c.run_id = run_id;
    if (responses[i].finish_reason == gateway::FinishReason::Error) {
      c.caption = "";
    } else {
      c.caption = responses[i].text;
    }
    stage.captions.push_back(std::move(c));
  }
  return stage;
}

ReasonStage run_reason_stage(const std::vector<ProblemRecord>& records, ReasoningMode mode,
                             const std::string& reasoner,
                             const std::map<std::string, CaptionRecord>& captions,
                             gateway::Gateway& gw, const ToolkitConfig& config,
                             const PromptLibrary& prompts, const StageOptions& options) {
  const auto subset = apply_sampling(records, options);
  const auto [provider_id, model_name] = config.route_model(reasoner);

  ReasonStage stage;
  stage.manifest = base_manifest("reason", config, prompts, options);
  stage.manifest.reasoner = reasoner;
  stage.manifest.mode = mode_token(mode);
  if (mode != ReasoningMode::DirectVision && !captions.empty()) {
    stage.manifest.captioner = captions.begin()->second.captioner;
  }
  const std::string run_id = stage.manifest.run_id();

  std::vector<ChatRequest> requests;
  std::vector<ReasoningRecord> rows;
  std::vector<std::size_t> request_of_row;
  for (const auto& record : subset) {
    ReasoningRecord row;
    row.problem_id = record.id;
    row.reasoner = reasoner;
    row.mode = mode_token(mode);
    row.benchmark = record.benchmark;
    row.variant = record.variant;
    row.run_id = run_id;

    std::optional<CaptionRecord> caption;
    if (mode != ReasoningMode::DirectVision) {
      const auto it = captions.find(record.id);
      if (it == captions.end() || it->second.caption.empty()) {
        row.error = "no caption available";
        rows.push_back(std::move(row));
        request_of_row.push_back(static_cast<std::size_t>(-1));
        continue;
      }
      caption = it->second;
      row.captioner = caption->captioner;
    }

    auto req = build_reasoning_prompt(record, caption, mode, prompts, provider_id, model_name,
                                      config.decoding);
    row.fingerprint = gateway::cache_key(req);
    request_of_row.push_back(requests.size());
    requests.push_back(std::move(req));
    rows.push_back(std::move(row));
  }

  const auto responses = gw.batch(requests, options.max_in_flight);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (request_of_row[i] == static_cast<std::size_t>(-1)) continue;
    const auto& resp = responses[request_of_row[i]];
    if (resp.finish_reason == gateway::FinishReason::Error) {
      rows[i].error = resp.error.empty() ? "provider error" : resp.error;
    } else {
      rows[i].raw = resp.text;
    }
  }
  stage.rows = std::move(rows);
  return stage;
}

int grade_rows(std::vector<ReasoningRecord>& rows, const std::vector<ProblemRecord>& records) {
  std::map<std::string, const ProblemRecord*> by_id;
  for (const auto& r : records) by_id[r.id] = &r;

  int graded = 0;
  for (auto& row : rows) {
    if (!row.error.empty() || row.raw.empty()) continue;
    const auto it = by_id.find(row.problem_id);
    if (it == by_id.end()) continue;
    const ProblemRecord& record = *it->second;
    const GradeResult g = grade_answer(row.raw, record.gold, record.answer_type, record.options);
    row.extracted = g.extracted;
    row.correct = g.correct;
    row.extraction_failure = g.extraction_failure;
    row.graded = true;
    ++graded;
  }
  return graded;
}

std::map<std::string, CaptionRecord> captions_by_problem(const std::vector<CaptionRecord>& records) {
  std::map<std::string, CaptionRecord> out;
  for (const auto& c : records) out[c.problem_id] = c;
  return out;
}

}  // namespace capgeo::pipeline
