#include "capgeo/pipeline/ingest.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>

#include "capgeo/errors.hpp"

namespace capgeo::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::set<std::string>& known_formats() {
  static const std::set<std::string> formats = {"mathverse", "mathvista-geometry", "geoqa",
                                                "capgeo-bench"};
  return formats;
}

bool tag_matches(const json& row, const std::string& needle) {
  if (!row.contains("tags")) return true;  // untagged rows pass the filter
  for (const auto& tag : row["tags"]) {
    std::string t = tag.get<std::string>();
    std::transform(t.begin(), t.end(), t.begin(), ::tolower);
    if (t.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::string validate_row(const json& row, const std::string& format_tag, ProblemRecord& out) {
  for (const char* field : {"id", "question", "image_path", "gold", "answer_type"}) {
    if (!row.contains(field) || row[field].get<std::string>().empty()) {
      return std::string("missing field '") + field + "'";
    }
  }
  out.id = row["id"].get<std::string>();
  out.benchmark = row.value("benchmark", format_tag);
  if (out.benchmark != format_tag) {
    return "benchmark '" + out.benchmark + "' does not match format tag '" + format_tag + "'";
  }
  out.question = row["question"].get<std::string>();
  out.gold = row["gold"].get<std::string>();

  const auto type = answer_type_from_token(row["answer_type"].get<std::string>());
  if (!type) return "unknown answer_type '" + row["answer_type"].get<std::string>() + "'";
  out.answer_type = *type;

  if (row.contains("options")) out.options = row["options"].get<std::vector<std::string>>();
  if (out.answer_type == AnswerType::Choice) {
    if (out.options.empty()) return "choice answer without options";
    if (std::find(out.options.begin(), out.options.end(), out.gold) == out.options.end()) {
      return "gold answer '" + out.gold + "' not in option set";
    }
  }
  if (out.answer_type == AnswerType::Numeric && !Rational::parse(out.gold)) {
    return "numeric gold answer '" + out.gold + "' is not a rational";
  }

  out.variant = row.value("variant", "");
  if (out.variant == "n/a") out.variant.clear();
  if (!out.variant.empty() && out.variant != "vision-only" && out.variant != "vision-intensive") {
    return "unknown variant '" + out.variant + "'";
  }
  out.class_tag = row.value("class", "");
  if (out.class_tag == "n/a") out.class_tag.clear();
  if (!out.class_tag.empty() && out.class_tag != "AG" && out.class_tag != "PG" &&
      out.class_tag != "SG") {
    return "unknown class tag '" + out.class_tag + "'";
  }
  out.difficulty_tag = row.value("difficulty", "");
  if (out.difficulty_tag == "n/a") out.difficulty_tag.clear();
  if (!out.difficulty_tag.empty()) {
    static const std::set<std::string> difficulties = {"T1", "T2", "T3", "T4"};
    if (difficulties.count(out.difficulty_tag) == 0) {
      return "unknown difficulty tag '" + out.difficulty_tag + "'";
    }
  }
  return "";
}

}  // namespace

IngestResult ingest_benchmark(const std::string& path, const std::string& format_tag,
                              ContentStore& store, const std::string& mathvista_filter) {
  if (known_formats().count(format_tag) == 0) {
    throw DataError("unknown format tag '" + format_tag + "'");
  }
  std::ifstream in(path);
  if (!in) throw DataError("cannot open benchmark file: " + path);

  const fs::path base = fs::path(path).parent_path();
  IngestResult result;
  std::set<std::string> seen_ids;
  std::string line;
  int row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty()) continue;

    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      result.rejects.push_back({row_no, "", std::string("bad JSON: ") + e.what()});
      continue;
    }

    if (format_tag == "mathvista-geometry" && !tag_matches(row, mathvista_filter)) {
      ++result.filtered;
      continue;
    }

    ProblemRecord record;
    std::string reason;
    try {
      reason = validate_row(row, format_tag, record);
    } catch (const json::exception& e) {
      reason = std::string("bad field type: ") + e.what();
    }
    if (reason.empty() && !seen_ids.insert(record.id).second) {
      reason = "duplicate id '" + record.id + "'";
    }
    if (reason.empty()) {
      const fs::path image = base / row["image_path"].get<std::string>();
      try {
        record.image_digest = store.put_file(image);
      } catch (const DataError& e) {
        reason = e.what();
      }
    }

    if (reason.empty()) {
      result.records.push_back(std::move(record));
    } else {
      result.rejects.push_back({row_no, row.value("id", ""), reason});
    }
  }
  return result;
}

std::string rejects_to_json_lines(const std::vector<RejectRow>& rejects) {
  std::string out;
  for (const auto& r : rejects) {
    out += json{{"row", r.row}, {"id", r.id}, {"reason", r.reason}}.dump();
    out += '\n';
  }
  return out;
}

}  // namespace capgeo::pipeline
