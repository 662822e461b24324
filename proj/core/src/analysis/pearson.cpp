#include "capgeo/analysis/pearson.hpp"

#include <cmath>

namespace capgeo::analysis {

std::optional<double> pearson(const std::vector<std::pair<double, double>>& points) {
  const std::size_t n = points.size();
  if (n < 2) return std::nullopt;

  double mean_x = 0, mean_y = 0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxy = 0, sxx = 0, syy = 0;
  for (const auto& [x, y] : points) {
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;

  const double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
  // Guard against rounding pushing |r| a hair past 1.
  if (r > 1.0) return 1.0;
  if (r < -1.0) return -1.0;
  return r;
}

}  // namespace capgeo::analysis
