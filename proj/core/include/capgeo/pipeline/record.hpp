#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capgeo/rational.hpp"

namespace capgeo::pipeline {

enum class AnswerType { Choice, Numeric, Text };

const char* answer_type_token(AnswerType t);
std::optional<AnswerType> answer_type_from_token(const std::string& token);

enum class ReasoningMode { DirectVision, CaptionWithImage, CaptionWithoutImage };

const char* mode_token(ReasoningMode m);
std::optional<ReasoningMode> mode_from_token(const std::string& token);

// One benchmark item after ingestion: the image lives in the content store
// under its digest.
struct ProblemRecord {
  std::string id;
  std::string benchmark;  // mathverse | mathvista-geometry | geoqa | capgeo-bench
  std::string variant;    // vision-only | vision-intensive | "" (n/a)
  std::string question;
  std::string image_digest;
  std::string gold;
  AnswerType answer_type = AnswerType::Choice;
  std::vector<std::string> options;  // nonempty iff answer_type == Choice
  std::string class_tag;             // AG | PG | SG | ""
  std::string difficulty_tag;        // T1..T4 | ""
};

struct CaptionRecord {
  std::string problem_id;
  std::string captioner;
  std::string caption;
  std::string fingerprint;
  std::string run_id;
};

struct ReasoningRecord {
  std::string problem_id;
  std::string reasoner;
  std::string mode;
  std::string captioner;  // empty in direct-vision mode
  std::string benchmark;
  std::string variant;
  std::string raw;
  std::string extracted;
  bool correct = false;
  bool extraction_failure = false;
  bool graded = false;
  std::string error;  // per-item gateway failure
  std::string fingerprint;
  std::string run_id;
};

// Line-delimited record I/O. Readers throw DataError with the offending
// line number on schema violations.
std::string problem_to_json_line(const ProblemRecord& r);
ProblemRecord problem_from_json_line(const std::string& line);
std::vector<ProblemRecord> read_problem_records(const std::string& path);
void write_problem_records(const std::string& path, const std::vector<ProblemRecord>& records);

std::vector<CaptionRecord> read_caption_records(const std::string& path);
void write_caption_records(const std::string& path, const std::vector<CaptionRecord>& records);

std::vector<ReasoningRecord> read_reasoning_records(const std::string& path);
void write_reasoning_records(const std::string& path, const std::vector<ReasoningRecord>& records);

}  // namespace capgeo::pipeline
