#pragma once

#include <string>
#include <vector>

#include "capgeo/analysis/pearson.hpp"
#include "capgeo/analysis/table.hpp"

namespace capgeo::analysis {

struct CorrelationReport {
  std::string x_desc;
  std::string y_desc;
  CorrelationInput input;
  std::optional<double> r;
  std::vector<std::string> source_runs;
};

std::string correlation_to_json(const CorrelationReport& report);
CorrelationReport correlation_from_json(const std::string& text);

// Emits tables and correlations to `out_path`. Formats: "markdown" (one
// file), "csv" and "jsonl" (one file per table under out_path as a
// directory, or a single file when there is exactly one table and out_path
// names a file). Byte-deterministic for identical inputs. Returns the
// written paths.
std::vector<std::string> emit_report(const std::vector<Table>& tables,
                                     const std::vector<CorrelationReport>& correlations,
                                     const std::string& format, const std::string& out_path);

}  // namespace capgeo::analysis
