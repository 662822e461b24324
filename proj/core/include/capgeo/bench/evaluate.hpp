#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "capgeo/bench/judge.hpp"
#include "capgeo/scoring.hpp"

namespace capgeo::bench {

// One bench item: a ground-truth caption, the caption under evaluation,
// and the grouping tags.
struct CaptionPair {
  std::string id;
  std::string image_path;
  std::string gt_caption;
  std::string response_caption;  // may be filled later by a caption stage
  std::string class_tag;         // AG | PG | SG
  std::string difficulty_tag;    // T1..T4
  std::string language;          // zh | en
};

// Line-delimited pair format: id, image_path, gt_caption, class, difficulty,
// language, optional response_caption. Throws DataError with line numbers.
std::vector<CaptionPair> read_caption_pairs(const std::string& path);
void write_caption_pairs(const std::string& path, const std::vector<CaptionPair>& pairs);

// Full audit record for one evaluated caption.
struct EvalTrace {
  std::string record_id;
  std::string judge_id;
  std::string class_tag;
  std::string difficulty_tag;
  KeypointSet gt_set;
  KeypointSet response_set;
  std::array<MatchResult, 3> matches{};
  DimensionScores scores;
  std::vector<std::string> transcripts;
  std::vector<std::string> rejected_lines;
  bool evaluated = false;
  std::string error;  // set when !evaluated
};

// Three steps end to end: extract both keypoint sets, match, score.
// Failures are recorded in the trace instead of thrown; failed records are
// excluded from aggregates but counted in the coverage report.
EvalTrace evaluate_caption(const CaptionPair& pair, Judge& judge);

// Self-contained text form for audit and export.
std::string trace_to_text(const EvalTrace& trace);

struct BenchReport {
  std::string judge_id;
  std::string captioner;  // empty when pairs carried their own responses
  std::string run_id;
  std::vector<ScoreRow> rows;  // evaluated records only
  BenchAggregate aggregate;
  int evaluated = 0;
  int failed = 0;
  std::vector<std::string> failed_ids;
};

struct BenchOptions {
  std::string trace_dir;  // traces written to <trace_dir>/<run_id>/<id>.trace
  int max_parallel = 1;
  std::string run_id = "bench";
  std::string captioner_label;
};

// Evaluates every pair; pairs must already carry response captions (use the
// caption stage + merge_response_captions to generate them).
BenchReport run_bench(const std::vector<CaptionPair>& pairs, Judge& judge,
                      const BenchOptions& options = {});

// Fills response captions from a caption-record map keyed by pair id.
int merge_response_captions(std::vector<CaptionPair>& pairs,
                            const std::map<std::string, std::string>& captions_by_id);

std::string bench_report_to_json(const BenchReport& report);
BenchReport bench_report_from_json(const std::string& text);

}  // namespace capgeo::bench
