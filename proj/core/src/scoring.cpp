#include "capgeo/scoring.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "capgeo/errors.hpp"

namespace capgeo {
namespace {

struct Accumulator {
  double sum = 0;
  int n = 0;
  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  std::optional<double> mean() const {
    if (n == 0) return std::nullopt;
    return sum / n;
  }
};

int class_column(const std::string& tag) {
  for (int i = 0; i < 3; ++i) {
    if (tag == kClassTags[i]) return i;
  }
  return -1;
}

int difficulty_column(const std::string& tag) {
  for (int i = 0; i < 4; ++i) {
    if (tag == kDifficultyTags[i]) return 3 + i;
  }
  return -1;
}

std::string format_score_field(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", *v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::optional<double> DimensionScores::mean() const {
  Accumulator acc;
  acc.add(element);
  acc.add(spatial);
  acc.add(numerical);
  return acc.mean();
}

std::optional<double> recall_score(const MatchResult& match) {
  if (match.gt_count == 0) return std::nullopt;
  return static_cast<double>(match.tp_count) / static_cast<double>(match.gt_count);
}

DimensionScores dimension_scores(const MatchResult& element, const MatchResult& spatial,
                                 const MatchResult& numerical) {
  DimensionScores s;
  s.element = recall_score(element);
  s.spatial = recall_score(spatial);
  s.numerical = recall_score(numerical);
  return s;
}

ScoreRow make_score_row(std::string record_id, std::string class_tag, std::string difficulty_tag,
                        const std::array<MatchResult, 3>& matches) {
  ScoreRow row;
  row.record_id = std::move(record_id);
  row.class_tag = std::move(class_tag);
  row.difficulty_tag = std::move(difficulty_tag);
  row.scores = dimension_scores(matches[0], matches[1], matches[2]);
  for (int d = 0; d < 3; ++d) {
    row.tp[static_cast<std::size_t>(d)] = matches[static_cast<std::size_t>(d)].tp_count;
    row.gt[static_cast<std::size_t>(d)] = matches[static_cast<std::size_t>(d)].gt_count;
  }
  return row;
}

const char* BenchAggregate::column_name(int col) {
  static constexpr const char* names[] = {"AG", "PG", "SG", "T1", "T2", "T3", "T4", "Overall"};
  return col >= 0 && col < kColumns ? names[col] : "?";
}

BenchAggregate aggregate_scores(const std::vector<ScoreRow>& rows) {
  BenchAggregate out;
  out.row_count = static_cast<int>(rows.size());
  if (rows.empty()) return out;

  std::array<std::array<Accumulator, BenchAggregate::kColumns>, 3> acc{};
  for (const auto& row : rows) {
    const int ccol = class_column(row.class_tag);
    const int dcol = difficulty_column(row.difficulty_tag);
    for (int d = 0; d < 3; ++d) {
      const auto score = row.scores.get(static_cast<Dimension>(d));
      const auto di = static_cast<std::size_t>(d);
      if (ccol >= 0) acc[di][static_cast<std::size_t>(ccol)].add(score);
      if (dcol >= 0) acc[di][static_cast<std::size_t>(dcol)].add(score);
      acc[di][BenchAggregate::kOverallColumn].add(score);
    }
  }

  Accumulator avg;
  for (int d = 0; d < 3; ++d) {
    const auto di = static_cast<std::size_t>(d);
    for (int c = 0; c < BenchAggregate::kColumns; ++c) {
      out.cells[di][static_cast<std::size_t>(c)] = acc[di][static_cast<std::size_t>(c)].mean();
    }
    avg.add(out.cells[di][BenchAggregate::kOverallColumn]);
  }
  out.avg = avg.mean();
  return out;
}

double round_half_up_1dp(double percent) {
  return std::floor(percent * 10.0 + 0.5) / 10.0;
}

std::string format_percent(std::optional<double> fraction) {
  if (!fraction) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", round_half_up_1dp(*fraction * 100.0));
  return buf;
}

std::string score_rows_to_csv(const std::vector<ScoreRow>& rows) {
  std::string out =
      "record_id,class,difficulty,s_element,s_spatial,s_numerical,mean,"
      "tp_element,gt_element,tp_spatial,gt_spatial,tp_numerical,gt_numerical\n";
  for (const auto& row : rows) {
    out += row.record_id + "," + row.class_tag + "," + row.difficulty_tag + ",";
    out += format_score_field(row.scores.element) + ",";
    out += format_score_field(row.scores.spatial) + ",";
    out += format_score_field(row.scores.numerical) + ",";
    out += format_score_field(row.scores.mean());
    for (int d = 0; d < 3; ++d) {
      const auto di = static_cast<std::size_t>(d);
      out += "," + std::to_string(row.tp[di]) + "," + std::to_string(row.gt[di]);
    }
    out += "\n";
  }
  return out;
}

std::vector<ScoreRow> score_rows_from_csv(const std::string& text) {
  std::vector<ScoreRow> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 13) {
      throw DataError("score row line " + std::to_string(line_no) + ": expected 13 fields, got " +
                      std::to_string(fields.size()));
    }
    ScoreRow row;
    row.record_id = fields[0];
    row.class_tag = fields[1];
    row.difficulty_tag = fields[2];
    auto parse_score = [&](const std::string& f) -> std::optional<double> {
      if (f.empty()) return std::nullopt;
      return std::stod(f);
    };
    row.scores.element = parse_score(fields[3]);
    row.scores.spatial = parse_score(fields[4]);
    row.scores.numerical = parse_score(fields[5]);
    for (int d = 0; d < 3; ++d) {
      const auto di = static_cast<std::size_t>(d);
      row.tp[di] = std::stoi(fields[7 + 2 * di]);
      row.gt[di] = std::stoi(fields[8 + 2 * di]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace capgeo
