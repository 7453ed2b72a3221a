#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "expsum/error.hpp"
#include "expsum/linalg.hpp"
#include "expsum/series.hpp"

namespace expsum {

/// One summand c * exp(s * t).
struct ExpTerm {
  Complex amplitude;
  Complex exponent;

  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// Canonical term order: ascending Im s, ties broken by ascending Re s.
inline bool canonical_less(const ExpTerm& a, const ExpTerm& b) noexcept {
  if (a.exponent.imag() != b.exponent.imag()) return a.exponent.imag() < b.exponent.imag();
  return a.exponent.real() < b.exponent.real();
}

/// Sum of complex exponentials, t measured in sampling steps of size dt.
/// Terms are kept in canonical order; exponents are pairwise distinct.
class ExponentialModel {
 public:
  static constexpr double kDistinctTolerance = 1e-12;

  explicit ExponentialModel(std::vector<ExpTerm> terms, double dt = 1.0)
      : terms_(std::move(terms)), dt_(dt) {
    if (terms_.empty()) throw Error(ErrorKind::InvalidModel, "model has no terms");
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
      throw Error(ErrorKind::InvalidModel, "sampling step must be positive");
    }
    for (const auto& term : terms_) {
      for (double v : {term.amplitude.real(), term.amplitude.imag(),
                       term.exponent.real(), term.exponent.imag()}) {
        if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteValue, "model term is not finite");
      }
    }
    std::stable_sort(terms_.begin(), terms_.end(), canonical_less);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      for (std::size_t j = i + 1; j < terms_.size(); ++j) {
        if (std::abs(terms_[i].exponent - terms_[j].exponent) <= kDistinctTolerance) {
          throw Error(ErrorKind::InvalidModel, "two exponents coincide");
        }
      }
    }
  }

  const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  double dt() const noexcept { return dt_; }

  friend bool operator==(const ExponentialModel&, const ExponentialModel&) = default;

 private:
  std::vector<ExpTerm> terms_;
  double dt_;
};

/// Y(t) = sum_k c_k exp(s_k t), summed in canonical order.
inline Complex evaluate(const ExponentialModel& model, double t) noexcept {
  Complex acc = 0.0;
  for (const auto& term : model.terms()) acc += term.amplitude * std::exp(term.exponent * t);
  return acc;
}

struct RealEvaluation {
  double value = 0.0;      // Re Y(t)
  double imag_abs = 0.0;   // |Im Y(t)|, numerical noise for real-valued models
};

inline RealEvaluation evaluate_real(const ExponentialModel& model, double t) noexcept {
  const Complex y = evaluate(model, t);
  return {y.real(), std::abs(y.imag())};
}

/// Principal logarithm with Im in (-pi, pi]; a negative real argument with
/// a signed-zero imaginary part maps to +pi.
inline Complex principal_log(Complex z) {
  if (z.imag() == 0.0 && z.real() < 0.0) return {std::log(-z.real()), std::numbers::pi};
  return std::log(z);
}

// ---------------------------------------------------------------------------

enum class FitMode { Exact, LeastSquares };

struct FitOptions {
  int terms = 1;
  FitMode mode = FitMode::Exact;
  bool symmetrize = true;
};

/// Coefficients a_0..a_{p-1} of x_{k+p} = sum_j a_j x_{k+j}.
///
/// With N = 2p samples the p x p system is solved exactly, otherwise in the
/// least-squares sense. A rank-deficient but consistent system (e.g. a
/// constant series with p = 2) falls back to the basic solution, which still
/// satisfies every recurrence row.
inline ComplexVector linear_prediction(const TimeSeries& series, int p) {
  if (p < 1) throw Error(ErrorKind::InvalidOptions, "term count must be at least 1");
  const std::size_t order = static_cast<std::size_t>(p);
  const std::size_t n = series.size();
  if (n < 2 * order) {
    throw Error(ErrorKind::InvalidOptions, "linear prediction of order " + std::to_string(p) +
                                               " needs at least " + std::to_string(2 * p) +
                                               " samples, have " + std::to_string(n));
  }
  const std::size_t rows = n - order;
  ComplexMatrix hankel(rows, order);
  ComplexVector rhs(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t j = 0; j < order; ++j) hankel(k, j) = series[k + j].y;
    rhs[k] = series[k + order].y;
  }

  try {
    return rows == order ? solve(hankel, rhs).x : least_squares(hankel, rhs).x;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularMatrix && e.kind() != ErrorKind::RankDeficient) throw;
  }
  auto basic = basic_least_squares(hankel, rhs);
  const double scale = std::max(series.max_abs_value(), 1e-300);
  if (basic.solution.residual > 1e-10 * scale) {
    throw Error(ErrorKind::SingularPredictionSystem,
                "prediction system has rank " + std::to_string(basic.rank) + " of " +
                    std::to_string(order) + " and is inconsistent");
  }
  return std::move(basic.solution.x);
}

/// Splits terms into exact conjugate pairs for a model fitted to a
/// real-valued series.
///
/// Terms whose exponent and amplitude are real within tolerance are snapped
/// to real. Every other term is greedily matched with the unused term whose
/// conjugate is nearest in (s, c); both are replaced by the exact conjugates
/// of their average. Distances are measured relative to
/// max(1, max|s|) and max|c|. A lone term on the Nyquist line (Im s = pi,
/// real amplitude, from a negative real root) is real at integer t and is
/// snapped to Im s = pi exactly.
inline ExponentialModel conjugate_symmetrize(const ExponentialModel& model,
                                             double tolerance = 1e-6) {
  const auto& in = model.terms();
  double scale_s = 1.0;
  double scale_c = 0.0;
  for (const auto& term : in) {
    scale_s = std::max(scale_s, std::abs(term.exponent));
    scale_c = std::max(scale_c, std::abs(term.amplitude));
  }
  if (!(scale_c > 0.0)) scale_c = 1.0;
  const double tol_s = tolerance * scale_s;
  const double tol_c = tolerance * scale_c;

  auto mismatch = [&](const ExpTerm& a, const ExpTerm& b) {
    return std::max(std::abs(a.exponent - std::conj(b.exponent)) / scale_s,
                    std::abs(a.amplitude - std::conj(b.amplitude)) / scale_c);
  };

  std::vector<ExpTerm> out = in;
  std::vector<bool> used(in.size(), false);
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const auto& term = in[i];
    const bool real_amplitude = std::abs(term.amplitude.imag()) <= tol_c;
    if (std::abs(term.exponent.imag()) <= tol_s && real_amplitude) {
      out[i] = {Complex(term.amplitude.real()), Complex(term.exponent.real())};
      continue;
    }

    std::size_t best = in.size();
    double best_mismatch = tolerance;
    for (std::size_t j = 0; j < in.size(); ++j) {
      if (used[j]) continue;
      const double d = mismatch(term, in[j]);
      if (d <= best_mismatch) {
        best_mismatch = d;
        best = j;
      }
    }
    if (best < in.size()) {
      used[best] = true;
      const Complex s = 0.5 * (term.exponent + std::conj(in[best].exponent));
      const Complex c = 0.5 * (term.amplitude + std::conj(in[best].amplitude));
      out[i] = {c, s};
      out[best] = {std::conj(c), std::conj(s)};
      continue;
    }

    if (std::abs(std::abs(term.exponent.imag()) - std::numbers::pi) <= tol_s && real_amplitude) {
      out[i] = {Complex(term.amplitude.real()),
                Complex(term.exponent.real(), std::numbers::pi)};
      continue;
    }
    throw Error(ErrorKind::UnpairedTerm,
                "term with exponent (" + std::to_string(term.exponent.real()) + ", " +
                    std::to_string(term.exponent.imag()) + ") has no conjugate partner");
  }
  return ExponentialModel(std::move(out), model.dt());
}

/// Intermediate products of a fit, kept for diagnostics.
struct FitOutcome {
  ExponentialModel model;
  ComplexVector prediction;  // a_0..a_{p-1}
  ComplexVector roots;       // z_k, in root-finder order
  int root_iterations = 0;
  double amplitude_residual = 0.0;  // ||V c - y||_inf of the amplitude system
};

inline constexpr double kUnitSpacingTolerance = 1e-9;
inline constexpr double kZeroRootTolerance = 1e-12;
inline constexpr double kRepeatedRootTolerance = 1e-10;
// A double root splits by about sqrt(eps) in floating point, so a close pair
// whose midpoint is itself a root to working precision also counts as repeated.
inline constexpr double kRootClusterRadius = 1e-6;
inline constexpr double kClusterResidualTolerance = 100 * std::numeric_limits<double>::epsilon();

/// Prony fit: linear prediction, roots of the characteristic polynomial
/// z^p - a_{p-1} z^{p-1} - ... - a_0, s_k = Log z_k, amplitudes from the
/// full N x p Vandermonde system in the least-squares sense, optional
/// conjugate symmetrization, canonical order.
inline FitOutcome fit_detailed(const TimeSeries& series, const FitOptions& options) {
  const int p = options.terms;
  const auto n = static_cast<long long>(series.size());
  if (p < 1) throw Error(ErrorKind::InvalidOptions, "term count must be at least 1");
  if (options.mode == FitMode::Exact && n != 2LL * p) {
    throw Error(ErrorKind::InvalidOptions, "exact mode needs exactly " + std::to_string(2 * p) +
                                               " samples, have " + std::to_string(n));
  }
  if (options.mode == FitMode::LeastSquares && n < 2LL * p) {
    throw Error(ErrorKind::InvalidOptions, "least-squares mode needs at least " +
                                               std::to_string(2 * p) + " samples, have " +
                                               std::to_string(n));
  }
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (std::abs(series[i].t - series[i - 1].t - 1.0) > kUnitSpacingTolerance) {
      throw Error(ErrorKind::NodeMismatch,
                  "abscissas must be unit-spaced; gap before point " + std::to_string(i) +
                      " is " + std::to_string(series[i].t - series[i - 1].t));
    }
  }

  auto prediction = linear_prediction(series, p);

  ComplexVector characteristic(static_cast<std::size_t>(p) + 1);
  for (int j = 0; j < p; ++j) characteristic[static_cast<std::size_t>(j)] = -prediction[static_cast<std::size_t>(j)];
  characteristic.back() = 1.0;
  const Polynomial poly(std::move(characteristic));
  const auto found = find_roots(poly);
  const auto& z = found.roots;

  for (const auto& root : z) {
    if (std::abs(root) < kZeroRootTolerance) {
      throw Error(ErrorKind::ZeroRoot, "characteristic polynomial has a zero root");
    }
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double gap = std::abs(z[i] - z[j]);
      const Complex mid = 0.5 * (z[i] + z[j]);
      const bool clustered =
          gap < kRootClusterRadius * std::max(1.0, std::abs(mid)) &&
          std::abs(poly(mid)) <= kClusterResidualTolerance * poly.magnitude_bound(mid);
      if (gap < kRepeatedRootTolerance || clustered) {
        throw Error(ErrorKind::RepeatedRoot, "characteristic roots " + std::to_string(i) +
                                                 " and " + std::to_string(j) + " coincide");
      }
    }
  }

  const auto t = series.abscissas();
  const auto y = series.ordinates();
  const ComplexVector rhs(y.begin(), y.end());
  const auto amplitudes = least_squares(vandermonde(z, t), rhs);

  constexpr double dt = 1.0;
  std::vector<ExpTerm> terms;
  terms.reserve(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    terms.push_back({amplitudes.x[k], principal_log(z[k]) / dt});
  }
  ExponentialModel model(std::move(terms), dt);
  if (options.symmetrize) model = conjugate_symmetrize(model);

  return FitOutcome{std::move(model), std::move(prediction), z, found.iterations,
                    amplitudes.residual};
}

inline ExponentialModel fit(const TimeSeries& series, const FitOptions& options) {
  return fit_detailed(series, options).model;
}

}  // namespace expsum
