#pragma once

#include <string>
#include <vector>

#include "capgeo/pipeline/content_store.hpp"
#include "capgeo/pipeline/record.hpp"

namespace capgeo::pipeline {

struct RejectRow {
  int row = 0;  // 1-based line number in the input file
  std::string id;
  std::string reason;
};

struct IngestResult {
  std::vector<ProblemRecord> records;
  std::vector<RejectRow> rejects;
  int filtered = 0;  // rows skipped by the mathvista geometry filter
};

// Reads a line-delimited benchmark file (fields: id, benchmark, variant,
// question, image_path, gold, answer_type, options, class, difficulty),
// validates every row, and copies images into the content store by digest.
// Malformed rows land in the rejects report instead of being dropped.
// Throws DataError for an unreadable file or unknown format tag.
IngestResult ingest_benchmark(const std::string& path, const std::string& format_tag,
                              ContentStore& store, const std::string& mathvista_filter = "geometry");

std::string rejects_to_json_lines(const std::vector<RejectRow>& rejects);

}  // namespace capgeo::pipeline
