#pragma once

#include <string>
#include <vector>

#include "capgeo/bench/evaluate.hpp"
#include "capgeo/pipeline/record.hpp"

namespace capgeo::analysis {

// A rendered results table: a uniform string grid plus the run ids its
// numbers came from. Emission is a pure function of the contents.
struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> source_runs;

  std::string to_markdown() const;
  std::string to_csv() const;
  std::string to_json_lines() const;
};

// Round-trips a table written by to_csv.
Table table_from_csv(const std::string& text);

// Accuracy aggregation recomputed from raw graded records: one cell per
// (reasoner, captioner, mode, benchmark, variant).
struct AccuracyCell {
  std::string reasoner;
  std::string captioner;  // empty for direct-vision
  std::string mode;
  std::string benchmark;
  std::string variant;
  int correct = 0;
  int n = 0;

  double accuracy() const { return n == 0 ? 0.0 : static_cast<double>(correct) / n; }
};

std::vector<AccuracyCell> accuracy_cells(const std::vector<pipeline::ReasoningRecord>& records);

// Paper-shaped layouts. Missing combinations render as "--" (text-only
// reasoners never have "w img" cells).
std::vector<Table> tabulate_mathverse(const std::vector<pipeline::ReasoningRecord>& records);
std::vector<Table> tabulate_mathvista_geoqa(const std::vector<pipeline::ReasoningRecord>& records);
std::vector<Table> tabulate_bench(const std::vector<bench::BenchReport>& reports);

// layout: "mathverse" | "mathvista-geoqa". Throws UsageError on unknown names.
std::vector<Table> tabulate(const std::vector<pipeline::ReasoningRecord>& records,
                            const std::string& layout);

}  // namespace capgeo::analysis
