#include "capgeo/pipeline/record.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

#include "capgeo/errors.hpp"

namespace capgeo::pipeline {

using nlohmann::json;

const char* answer_type_token(AnswerType t) {
  switch (t) {
    case AnswerType::Choice: return "choice";
    case AnswerType::Numeric: return "numeric";
    case AnswerType::Text: return "text";
  }
  return "?";
}

std::optional<AnswerType> answer_type_from_token(const std::string& token) {
  if (token == "choice") return AnswerType::Choice;
  if (token == "numeric") return AnswerType::Numeric;
  if (token == "text") return AnswerType::Text;
  return std::nullopt;
}

const char* mode_token(ReasoningMode m) {
  switch (m) {
    case ReasoningMode::DirectVision: return "direct-vision";
    case ReasoningMode::CaptionWithImage: return "caption-with-image";
    case ReasoningMode::CaptionWithoutImage: return "caption-without-image";
  }
  return "?";
}

std::optional<ReasoningMode> mode_from_token(const std::string& token) {
  if (token == "direct-vision") return ReasoningMode::DirectVision;
  if (token == "caption-with-image") return ReasoningMode::CaptionWithImage;
  if (token == "caption-without-image") return ReasoningMode::CaptionWithoutImage;
  return std::nullopt;
}

namespace {

template <typename RowFn>
void for_each_line(const std::string& path, RowFn&& fn) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      fn(line);
    } catch (const json::exception& e) {
      throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& line : lines) out << line << '\n';
}

}  // namespace

std::string problem_to_json_line(const ProblemRecord& r) {
  json j = {
      {"id", r.id},
      {"benchmark", r.benchmark},
      {"question", r.question},
      {"image_digest", r.image_digest},
      {"gold", r.gold},
      {"answer_type", answer_type_token(r.answer_type)},
  };
  if (!r.variant.empty()) j["variant"] = r.variant;
  if (!r.options.empty()) j["options"] = r.options;
  if (!r.class_tag.empty()) j["class"] = r.class_tag;
  if (!r.difficulty_tag.empty()) j["difficulty"] = r.difficulty_tag;
  return j.dump();
}

ProblemRecord problem_from_json_line(const std::string& line) {
  const json j = json::parse(line);
  ProblemRecord r;
  r.id = j.at("id").get<std::string>();
  r.benchmark = j.at("benchmark").get<std::string>();
  r.variant = j.value("variant", "");
  r.question = j.at("question").get<std::string>();
  r.image_digest = j.value("image_digest", "");
  r.gold = j.at("gold").get<std::string>();
  const auto type = answer_type_from_token(j.at("answer_type").get<std::string>());
  if (!type) throw DataError("unknown answer_type in record " + r.id);
  r.answer_type = *type;
  if (j.contains("options")) r.options = j["options"].get<std::vector<std::string>>();
  r.class_tag = j.value("class", "");
  r.difficulty_tag = j.value("difficulty", "");
  return r;
}

std::vector<ProblemRecord> read_problem_records(const std::string& path) {
  std::vector<ProblemRecord> out;
  for_each_line(path, [&](const std::string& line) { out.push_back(problem_from_json_line(line)); });
  return out;
}

void write_problem_records(const std::string& path, const std::vector<ProblemRecord>& records) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const auto& r : records) lines.push_back(problem_to_json_line(r));
  write_lines(path, lines);
}

std::vector<CaptionRecord> read_caption_records(const std::string& path) {
  std::vector<CaptionRecord> out;
  for_each_line(path, [&](const std::string& line) {
    const json j = json::parse(line);
    CaptionRecord c;
    c.problem_id = j.at("problem_id").get<std::string>();
    c.captioner = j.at("captioner").get<std::string>();
    c.caption = j.at("caption").get<std::string>();
    c.fingerprint = j.value("fingerprint", "");
    c.run_id = j.value("run_id", "");
    out.push_back(std::move(c));
  });
  return out;
}

void write_caption_records(const std::string& path, const std::vector<CaptionRecord>& records) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const auto& c : records) {
    lines.push_back(json{{"problem_id", c.problem_id},
                         {"captioner", c.captioner},
                         {"caption", c.caption},
                         {"fingerprint", c.fingerprint},
                         {"run_id", c.run_id}}
                        .dump());
  }
  write_lines(path, lines);
}

std::vector<ReasoningRecord> read_reasoning_records(const std::string& path) {
  std::vector<ReasoningRecord> out;
  for_each_line(path, [&](const std::string& line) {
    const json j = json::parse(line);
    ReasoningRecord r;
    r.problem_id = j.at("problem_id").get<std::string>();
    r.reasoner = j.at("reasoner").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.captioner = j.value("captioner", "");
    r.benchmark = j.value("benchmark", "");
    r.variant = j.value("variant", "");
    r.raw = j.value("raw", "");
    r.extracted = j.value("extracted", "");
    r.correct = j.value("correct", false);
    r.extraction_failure = j.value("extraction_failure", false);
    r.graded = j.value("graded", false);
    r.error = j.value("error", "");
    r.fingerprint = j.value("fingerprint", "");
    r.run_id = j.value("run_id", "");
    out.push_back(std::move(r));
  });
  return out;
}

void write_reasoning_records(const std::string& path, const std::vector<ReasoningRecord>& records) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const auto& r : records) {
    json j = {
        {"problem_id", r.problem_id},
        {"reasoner", r.reasoner},
        {"mode", r.mode},
        {"benchmark", r.benchmark},
        {"variant", r.variant},
        {"raw", r.raw},
        {"graded", r.graded},
        {"fingerprint", r.fingerprint},
        {"run_id", r.run_id},
    };
    if (!r.captioner.empty()) j["captioner"] = r.captioner;
    if (!r.error.empty()) j["error"] = r.error;
    if (r.graded) {
      j["extracted"] = r.extracted;
      j["correct"] = r.correct;
      j["extraction_failure"] = r.extraction_failure;
    }
    lines.push_back(j.dump());
  }
  write_lines(path, lines);
}

}  // namespace capgeo::pipeline
