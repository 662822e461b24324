#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "capgeo/matching.hpp"

namespace capgeo {

// Per-dimension recall for one caption. A dimension with empty ground truth
// has no defined score and is excluded from the mean.
struct DimensionScores {
  std::optional<double> element;
  std::optional<double> spatial;
  std::optional<double> numerical;

  std::optional<double> get(Dimension d) const {
    switch (d) {
      case Dimension::Element: return element;
      case Dimension::Spatial: return spatial;
      case Dimension::Numerical: return numerical;
    }
    return std::nullopt;
  }

  // Mean over defined dimensions only; recomputed on demand.
  std::optional<double> mean() const;
};

// tp/gt recall; undefined when the ground-truth dimension is empty.
std::optional<double> recall_score(const MatchResult& match);

DimensionScores dimension_scores(const MatchResult& element, const MatchResult& spatial,
                                 const MatchResult& numerical);

// One scored caption with its grouping tags and raw counts.
struct ScoreRow {
  std::string record_id;
  std::string class_tag;       // AG | PG | SG
  std::string difficulty_tag;  // T1..T4
  DimensionScores scores;
  std::array<int, 3> tp{0, 0, 0};  // indexed by Dimension
  std::array<int, 3> gt{0, 0, 0};
};

ScoreRow make_score_row(std::string record_id, std::string class_tag, std::string difficulty_tag,
                        const std::array<MatchResult, 3>& matches);

inline constexpr const char* kClassTags[] = {"AG", "PG", "SG"};
inline constexpr const char* kDifficultyTags[] = {"T1", "T2", "T3", "T4"};

// Aggregate grid in the bench-report shape: per-dimension mean recall for
// each class, each difficulty, and overall, plus the average of the overall
// dimension means. Values are fractions in [0,1]; cells with no defined
// contribution are absent. Percent rounding happens only at table emission.
struct BenchAggregate {
  // columns: AG, PG, SG, T1, T2, T3, T4, Overall
  static constexpr int kColumns = 8;
  static constexpr int kOverallColumn = 7;
  std::array<std::array<std::optional<double>, kColumns>, 3> cells{};
  std::optional<double> avg;
  int row_count = 0;

  static const char* column_name(int col);
};

BenchAggregate aggregate_scores(const std::vector<ScoreRow>& rows);

// Percent formatting used by every report: one decimal, round half up.
double round_half_up_1dp(double percent);
std::string format_percent(std::optional<double> fraction);  // "63.4" or "-"

// Score-row export: delimited records with columns record_id, class,
// difficulty, s_element, s_spatial, s_numerical, mean, then tp/gt counts
// per dimension. Undefined scores serialize as empty fields.
std::string score_rows_to_csv(const std::vector<ScoreRow>& rows);
std::vector<ScoreRow> score_rows_from_csv(const std::string& text);

}  // namespace capgeo
