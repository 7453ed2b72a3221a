#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expsum/error.hpp"
#include "expsum/prony.hpp"
#include "expsum/series.hpp"

namespace expsum {

enum class LossKind { Chebyshev, RobustCount, Lp, L1, LeastSquares, WeightedLeastSquares };

constexpr std::string_view loss_name(LossKind kind) noexcept {
  switch (kind) {
    case LossKind::Chebyshev: return "chebyshev";
    case LossKind::RobustCount: return "robust_count";
    case LossKind::Lp: return "lp";
    case LossKind::L1: return "l1";
    case LossKind::LeastSquares: return "ls";
    case LossKind::WeightedLeastSquares: return "wls";
  }
  return "unknown";
}

struct LossSpec {
  LossKind kind = LossKind::LeastSquares;
  double p_exponent = 2.0;             // lp only
  std::vector<double> weights;         // wls only
  std::optional<double> zero_tolerance;  // robust_count only; unset means exact zero test

  static LossSpec of(LossKind kind) {
    LossSpec s;
    s.kind = kind;
    return s;
  }
  static LossSpec chebyshev() { return of(LossKind::Chebyshev); }
  static LossSpec l1() { return of(LossKind::L1); }
  static LossSpec ls() { return of(LossKind::LeastSquares); }
  static LossSpec lp(double p) {
    auto s = of(LossKind::Lp);
    s.p_exponent = p;
    return s;
  }
  static LossSpec wls(std::vector<double> w) {
    auto s = of(LossKind::WeightedLeastSquares);
    s.weights = std::move(w);
    return s;
  }
  static LossSpec robust_count(std::optional<double> tol = std::nullopt) {
    auto s = of(LossKind::RobustCount);
    s.zero_tolerance = tol;
    return s;
  }
};

/// Loss functional of a residual vector:
///   chebyshev     max |r_i|
///   robust_count  #{i : |r_i| > zero_tolerance}
///   lp            (sum |r_i|^p)^(1/p); a quasi-norm for 0 < p < 1
///   l1            sum |r_i|
///   ls            sum r_i^2
///   wls           sum w_i^2 r_i^2
inline double loss(std::span<const double> residuals, const LossSpec& spec) {
  if (residuals.empty()) throw Error(ErrorKind::InvalidSpec, "residual vector is empty");
  for (double r : residuals) {
    if (!std::isfinite(r)) throw Error(ErrorKind::InvalidSpec, "residual is not finite");
  }

  switch (spec.kind) {
    case LossKind::Chebyshev: {
      double m = 0.0;
      for (double r : residuals) m = std::max(m, std::abs(r));
      return m;
    }
    case LossKind::RobustCount: {
      const double tol = spec.zero_tolerance.value_or(0.0);
      if (!(tol >= 0.0) || !std::isfinite(tol)) {
        throw Error(ErrorKind::InvalidSpec, "zero tolerance must be finite and non-negative");
      }
      double count = 0.0;
      for (double r : residuals) {
        if (std::abs(r) > tol) count += 1.0;
      }
      return count;
    }
    case LossKind::Lp: {
      const double p = spec.p_exponent;
      if (!(p > 0.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::InvalidSpec, "lp exponent must lie in (0, inf)");
      }
      double m = 0.0;
      for (double r : residuals) m = std::max(m, std::abs(r));
      if (m == 0.0) return 0.0;
      // Factor out the max so |r/m|^p cannot overflow.
      double s = 0.0;
      for (double r : residuals) s += std::pow(std::abs(r) / m, p);
      return m * std::pow(s, 1.0 / p);
    }
    case LossKind::L1: {
      double s = 0.0;
      for (double r : residuals) s += std::abs(r);
      return s;
    }
    case LossKind::LeastSquares: {
      double s = 0.0;
      for (double r : residuals) s += r * r;
      return s;
    }
    case LossKind::WeightedLeastSquares: {
      if (spec.weights.size() != residuals.size()) {
        throw Error(ErrorKind::InvalidSpec, "wls needs one weight per residual");
      }
      double s = 0.0;
      for (std::size_t i = 0; i < residuals.size(); ++i) {
        const double w = spec.weights[i];
        if (!std::isfinite(w)) throw Error(ErrorKind::InvalidSpec, "weight is not finite");
        s += w * w * residuals[i] * residuals[i];
      }
      return s;
    }
  }
  throw Error(ErrorKind::InvalidSpec, "unknown loss kind");
}

struct NodeResidual {
  double t = 0.0;
  double y = 0.0;
  double fitted = 0.0;    // Re Y(t)
  double residual = 0.0;  // y - Re Y(t)
  double imag = 0.0;      // Im Y(t)
};

struct FitReport {
  double max_abs_residual = 0.0;
  double rms_residual = 0.0;
  double max_imag = 0.0;
  std::vector<NodeResidual> nodes;
  std::map<std::string, double, std::less<>> losses;
};

inline constexpr double kRobustZeroRelTolerance = 1e-9;

/// Evaluates the model at every node and fills residual statistics plus the
/// chebyshev, l1, ls and robust_count losses (zero tolerance 1e-9 * max|y|).
inline FitReport residual_report(const ExponentialModel& model, const TimeSeries& series) {
  FitReport report;
  report.nodes.reserve(series.size());
  std::vector<double> residuals;
  residuals.reserve(series.size());
  double sum_sq = 0.0;
  for (const auto& p : series) {
    const Complex value = evaluate(model, p.t);
    const double r = p.y - value.real();
    report.nodes.push_back({p.t, p.y, value.real(), r, value.imag()});
    residuals.push_back(r);
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r));
    report.max_imag = std::max(report.max_imag, std::abs(value.imag()));
    sum_sq += r * r;
  }
  report.rms_residual = std::sqrt(sum_sq / static_cast<double>(series.size()));

  const double zero_tol = kRobustZeroRelTolerance * series.max_abs_value();
  for (const auto& spec : {LossSpec::chebyshev(), LossSpec::l1(), LossSpec::ls(),
                           LossSpec::robust_count(zero_tol)}) {
    report.losses.emplace(loss_name(spec.kind), loss(residuals, spec));
  }
  return report;
}

}  // namespace expsum
