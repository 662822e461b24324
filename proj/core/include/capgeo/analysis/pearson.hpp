#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace capgeo::analysis {

// Scatter input for the caption-quality vs reasoning-accuracy analysis.
struct CorrelationInput {
  std::vector<std::pair<double, double>> points;
  std::vector<std::string> labels;  // optional, aligned with points
};

// Sample Pearson correlation coefficient, computed in two passes
// (mean-centered covariance over the product of standard deviations) so it
// stays stable under affine rescaling of either axis. Undefined (nullopt)
// for fewer than two points or zero variance on an axis; never NaN.
std::optional<double> pearson(const std::vector<std::pair<double, double>>& points);

}  // namespace capgeo::analysis
