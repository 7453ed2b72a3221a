#pragma once

#include <string>
#include <vector>

#include "expsum/error.hpp"
#include "expsum/series.hpp"

namespace expsum {

struct SmoothingConfig {
  int passes = 1;
};

/// Centroid (intersection of the medians) of the triangle spanned by three
/// points. Collinear or coincident vertices are fine: the formula is total.
constexpr DataPoint centroid(const DataPoint& a, const DataPoint& b,
                             const DataPoint& c) noexcept {
  return {(a.t + b.t + c.t) / 3.0, (a.y + b.y + c.y) / 3.0};
}

/// Triangle-method smoothing. Each pass replaces the n points by the n - 2
/// centroids of consecutive triples (p_k, p_{k+1}, p_{k+2}); no boundary
/// padding is done.
inline TimeSeries smooth(const TimeSeries& series,
                         const SmoothingConfig& config = {}) {
  if (config.passes < 1) {
    throw Error(ErrorKind::InvalidConfig, "passes must be at least 1");
  }
  std::vector<DataPoint> current = series.points();
  for (int pass = 0; pass < config.passes; ++pass) {
    if (current.size() < 3) {
      throw Error(ErrorKind::SeriesTooShort,
                  "pass " + std::to_string(pass + 1) + " needs at least 3 points, have " +
                      std::to_string(current.size()));
    }
    std::vector<DataPoint> next;
    next.reserve(current.size() - 2);
    for (std::size_t k = 0; k + 2 < current.size(); ++k) {
      next.push_back(centroid(current[k], current[k + 1], current[k + 2]));
    }
    current = std::move(next);
  }
  // Averages of strictly increasing triples stay strictly increasing.
  return validate_series(std::move(current), series.name());
}

}  // namespace expsum
