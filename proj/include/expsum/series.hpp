#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "expsum/error.hpp"

namespace expsum {

struct DataPoint {
  double t = 0.0;
  double y = 0.0;

  friend bool operator==(const DataPoint&, const DataPoint&) = default;
};

class TimeSeries;
inline TimeSeries validate_series(std::vector<DataPoint> points,
                                  std::string name = {});

/// Ordered, validated sequence of observations. Abscissas are strictly
/// increasing and every value is finite. Only validate_series() builds one.
class TimeSeries {
 public:
  const std::vector<DataPoint>& points() const noexcept { return points_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return points_.size(); }
  const DataPoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  std::vector<double> abscissas() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.t);
    return out;
  }

  std::vector<double> ordinates() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.y);
    return out;
  }

  /// max |y| over the series; the natural scale for residual tolerances.
  double max_abs_value() const noexcept {
    double m = 0.0;
    for (const auto& p : points_) m = std::max(m, std::abs(p.y));
    return m;
  }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  TimeSeries(std::vector<DataPoint> points, std::string name)
      : points_(std::move(points)), name_(std::move(name)) {}

  friend TimeSeries validate_series(std::vector<DataPoint>, std::string);

  std::vector<DataPoint> points_;
  std::string name_;
};

inline TimeSeries validate_series(std::vector<DataPoint> points,
                                  std::string name) {
  if (points.empty()) throw Error(ErrorKind::EmptySeries, "series has no points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!std::isfinite(p.t) || !std::isfinite(p.y)) {
      throw Error(ErrorKind::NonFiniteValue,
                  "point " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(points[i - 1].t < p.t)) {
      throw Error(ErrorKind::NonIncreasingAbscissa,
                  "abscissa at point " + std::to_string(i) +
                      " does not exceed its predecessor");
    }
  }
  return TimeSeries(std::move(points), std::move(name));
}

/// Builds a series with abscissas first_t, first_t + 1, ...
inline TimeSeries series_from_values(std::span<const double> values,
                                     double first_t, std::string name = {}) {
  std::vector<DataPoint> pts;
  pts.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    pts.push_back({first_t + static_cast<double>(i), values[i]});
  }
  return validate_series(std::move(pts), std::move(name));
}

// ---------------------------------------------------------------------------
// Embedded datasets: Hungarian GDP, billion USD, indexed by year number.

namespace detail {

// Annual table, 1991..2022 at t = 1..32.
inline constexpr std::array<double, 32> kGdpHuTable1 = {
    34.75,  38.73,  40.12,  43.17,  46.43,  46.66,  47.3,   48.71,
    48,     49.66,  55.66,  68.33,  85.33,  100.66, 110.66, 122.66,
    140.19, 158.33, 131.07, 132.18, 141.94, 128.81, 135.68, 141.03,
    125.17, 128.61, 143.11, 160.75, 164.02, 157.23, 182.28, 178.79};

// Verification-table values, 1992..2021 at t = 1..30; these are the
// values the published 15-term exponential interpolant reproduces.
inline constexpr std::array<double, 30> kGdpHuEq1 = {
    37.33,  40.33,  43,     45,     46.33,  47,     48,     48,
    49.66,  55.66,  68.33,  85.33,  100.66, 110.66, 122.66, 137.66,
    143,    140.33, 134.66, 133.66, 134.66, 134.66, 133.66, 131.33,
    132,    143.66, 155.66, 160.33, 167.66, 172.33};

}  // namespace detail

struct FixtureInfo {
  std::string_view name;
  std::string_view description;
  int year_origin;  // calendar year = year_origin + t
};

inline constexpr std::array<FixtureInfo, 2> kFixtures = {{
    {"gdp_hu_table1", "GDP Hungary 1991-2022, annual table", 1990},
    {"gdp_hu_eq1", "GDP Hungary 1992-2021, interpolation verification table",
     1991},
}};

inline const FixtureInfo& fixture_info(std::string_view name) {
  for (const auto& f : kFixtures) {
    if (f.name == name) return f;
  }
  throw Error(ErrorKind::UnknownFixture, "no fixture named '" + std::string(name) + "'");
}

inline TimeSeries load_fixture(std::string_view name) {
  const auto& info = fixture_info(name);
  if (info.name == "gdp_hu_table1") {
    return series_from_values(detail::kGdpHuTable1, 1.0, std::string(info.name));
  }
  return series_from_values(detail::kGdpHuEq1, 1.0, std::string(info.name));
}

}  // namespace expsum
