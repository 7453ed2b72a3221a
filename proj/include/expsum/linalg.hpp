#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expsum/error.hpp"

namespace expsum {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) {
      throw Error(ErrorKind::DimensionMismatch, "matrix dimensions must be positive");
    }
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, ComplexVector entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0 || entries_.size() != rows * cols) {
      throw Error(ErrorKind::DimensionMismatch,
                  "expected " + std::to_string(rows * cols) + " entries, got " +
                      std::to_string(entries_.size()));
    }
    for (const auto& e : entries_) {
      if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
        throw Error(ErrorKind::NonFiniteValue, "matrix entry is not finite");
      }
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const ComplexVector& entries() const noexcept { return entries_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  ComplexVector apply(std::span<const Complex> x) const {
    if (x.size() != cols_) {
      throw Error(ErrorKind::DimensionMismatch, "vector length does not match columns");
    }
    ComplexVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
      y[r] = acc;
    }
    return y;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
  }

  /// Maximum absolute row sum.
  double norm_inf() const noexcept {
    double m = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < cols_; ++c) s += std::abs((*this)(r, c));
      m = std::max(m, s);
    }
    return m;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  ComplexVector entries_;
};

inline double norm_inf(std::span<const Complex> v) noexcept {
  double m = 0.0;
  for (const auto& e : v) m = std::max(m, std::abs(e));
  return m;
}

struct LinearSolution {
  ComplexVector x;
  double residual = 0.0;  // ||a x - b||_inf
};

namespace detail {

inline double residual_inf(const ComplexMatrix& a, std::span<const Complex> x,
                           std::span<const Complex> b) {
  auto ax = a.apply(x);
  double m = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) m = std::max(m, std::abs(ax[i] - b[i]));
  return m;
}

struct QrSolution {
  ComplexVector x;
  std::size_t rank = 0;
};

// Householder QR with column pivoting applied to [a | b]. Columns past the
// numerical rank get zero coefficients (basic solution).
inline QrSolution householder_solve(const ComplexMatrix& a,
                                    std::span<const Complex> b,
                                    double rank_tolerance) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  ComplexMatrix r = a;
  ComplexVector rhs(b.begin(), b.end());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  double max_col_norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += std::norm(r(i, j));
    max_col_norm = std::max(max_col_norm, std::sqrt(s));
  }
  const double threshold = rank_tolerance * max_col_norm;

  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double pivot_norm = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += std::norm(r(i, j));
      if (s > pivot_norm) {
        pivot_norm = s;
        pivot = j;
      }
    }
    pivot_norm = std::sqrt(pivot_norm);
    if (!(pivot_norm > threshold) || k >= m) break;
    if (pivot != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, pivot));
      std::swap(perm[k], perm[pivot]);
    }

    const Complex x0 = r(k, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    const Complex alpha = -phase * pivot_norm;
    ComplexVector v(m - k);
    for (std::size_t i = k; i < m; ++i) v[i - k] = r(i, k);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (const auto& e : v) vnorm2 += std::norm(e);

    auto reflect = [&](auto&& at) {
      Complex w = 0.0;
      for (std::size_t i = k; i < m; ++i) w += std::conj(v[i - k]) * at(i);
      w *= 2.0 / vnorm2;
      for (std::size_t i = k; i < m; ++i) at(i) -= w * v[i - k];
    };
    if (vnorm2 > 0.0) {
      for (std::size_t j = k + 1; j < n; ++j) {
        reflect([&](std::size_t i) -> Complex& { return r(i, j); });
      }
      reflect([&](std::size_t i) -> Complex& { return rhs[i]; });
    }
    r(k, k) = alpha;
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    ++rank;
  }

  ComplexVector y(n, Complex(0.0));
  for (std::size_t kk = rank; kk-- > 0;) {
    Complex acc = rhs[kk];
    for (std::size_t j = kk + 1; j < rank; ++j) acc -= r(kk, j) * y[j];
    y[kk] = acc / r(kk, kk);
  }
  QrSolution out;
  out.x.assign(n, Complex(0.0));
  for (std::size_t j = 0; j < n; ++j) out.x[perm[j]] = y[j];
  out.rank = rank;
  return out;
}

}  // namespace detail

/// Solves a x = b by Gaussian elimination with partial pivoting.
/// Throws SingularMatrix when a pivot falls below 1e-13 * max|a_ij|.
inline LinearSolution solve(const ComplexMatrix& a, std::span<const Complex> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "rhs length mismatch");

  ComplexMatrix lu = a;
  ComplexVector x(b.begin(), b.end());
  const double threshold = 1e-13 * a.max_abs();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double mag = std::abs(lu(i, k));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (!(best > threshold)) {
      throw Error(ErrorKind::SingularMatrix,
                  "pivot " + std::to_string(k) + " below tolerance");
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      std::swap(x[k], x[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = lu(i, k) / lu(k, k);
      if (factor == Complex(0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
      x[i] -= factor * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    Complex acc = x[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= lu(k, j) * x[j];
    x[k] = acc / lu(k, k);
  }
  LinearSolution out;
  out.residual = detail::residual_inf(a, x, b);
  out.x = std::move(x);
  return out;
}

/// Minimizes ||a x - b||_2 for m >= n by Householder (orthogonal)
/// triangularization. Throws RankDeficient when a diagonal entry of R falls
/// below 1e-12 times the largest column norm.
inline LinearSolution least_squares(const ComplexMatrix& a, std::span<const Complex> b) {
  if (a.rows() < a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "least squares needs rows >= cols");
  }
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "rhs length mismatch");
  auto qr = detail::householder_solve(a, b, 1e-12);
  if (qr.rank < a.cols()) {
    throw Error(ErrorKind::RankDeficient, "numerical rank " + std::to_string(qr.rank) +
                                              " < " + std::to_string(a.cols()));
  }
  LinearSolution out;
  out.residual = detail::residual_inf(a, qr.x, b);
  out.x = std::move(qr.x);
  return out;
}

/// Rank-revealing least squares: returns the basic solution (zero weight on
/// columns beyond the numerical rank) together with that rank.
struct BasicSolution {
  LinearSolution solution;
  std::size_t rank = 0;
};

inline BasicSolution basic_least_squares(const ComplexMatrix& a, std::span<const Complex> b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "rhs length mismatch");
  auto qr = detail::householder_solve(a, b, 1e-12);
  BasicSolution out;
  out.rank = qr.rank;
  out.solution.residual = detail::residual_inf(a, qr.x, b);
  out.solution.x = std::move(qr.x);
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials

/// Complex polynomial, coefficients in ascending degree order.
class Polynomial {
 public:
  explicit Polynomial(ComplexVector coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw Error(ErrorKind::InvalidPolynomial, "no coefficients");
    for (const auto& c : coeffs_) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw Error(ErrorKind::NonFiniteValue, "polynomial coefficient is not finite");
      }
    }
    if (std::abs(coeffs_.back()) == 0.0) {
      throw Error(ErrorKind::InvalidPolynomial, "leading coefficient is zero");
    }
  }

  /// Monic polynomial prod_k (z - r_k).
  static Polynomial from_roots(std::span<const Complex> roots) {
    ComplexVector c{1.0};
    for (const auto& r : roots) {
      ComplexVector next(c.size() + 1, Complex(0.0));
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j + 1] += c[j];
        next[j] -= r * c[j];
      }
      c = std::move(next);
    }
    return Polynomial(std::move(c));
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const ComplexVector& coefficients() const noexcept { return coeffs_; }

  Complex operator()(Complex z) const noexcept {
    Complex acc = 0.0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * z + coeffs_[j];
    return acc;
  }

  /// Tolerance scale sum_j |c_j| * max(1, |z|)^degree used to judge roots.
  double magnitude_bound(Complex z) const noexcept {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::abs(c);
    return s * std::pow(std::max(1.0, std::abs(z)), static_cast<double>(degree()));
  }

 private:
  ComplexVector coeffs_;
};

struct RootFinding {
  ComplexVector roots;
  int iterations = 0;
};

struct AberthOptions {
  int max_iterations = 500;
  double step_tolerance = 1e-13;     // relative to 1 + |z|
  double initial_rotation = 0.4;     // radians
  double residual_tolerance = 1e-10; // relative to Polynomial::magnitude_bound
};

/// All roots with multiplicity by Aberth-Ehrlich simultaneous iteration.
/// Exact zero roots (trailing zero coefficients) are split off first and
/// reported as 0.
inline RootFinding find_roots(const Polynomial& p, const AberthOptions& opts = {}) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidPolynomial, "degree must be at least 1");

  const auto& all = p.coefficients();
  std::size_t zeros = 0;
  while (all[zeros] == Complex(0.0)) ++zeros;
  ComplexVector c(all.begin() + static_cast<std::ptrdiff_t>(zeros), all.end());
  const std::size_t d = c.size() - 1;

  RootFinding out;
  if (d == 1) {
    out.roots.push_back(-c[0] / c[1]);
  } else if (d > 1) {
    double radius = std::pow(std::abs(c[0]) / std::abs(c[d]), 1.0 / static_cast<double>(d));
    if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
    ComplexVector z(d);
    for (std::size_t k = 0; k < d; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(d) + opts.initial_rotation;
      z[k] = std::polar(radius, angle);
    }

    std::vector<bool> done(d, false);
    bool converged = false;
    int iter = 0;
    while (!converged && iter < opts.max_iterations) {
      ++iter;
      converged = true;
      for (std::size_t i = 0; i < d; ++i) {
        if (done[i]) continue;
        Complex value = c[d];
        Complex deriv = 0.0;
        for (std::size_t j = d; j-- > 0;) {
          deriv = deriv * z[i] + value;
          value = value * z[i] + c[j];
        }
        if (value == Complex(0.0)) {
          done[i] = true;
          continue;
        }
        const Complex newton = value / deriv;
        Complex repulsion = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          if (j != i) repulsion += 1.0 / (z[i] - z[j]);
        }
        const Complex step = newton / (1.0 - newton * repulsion);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
          converged = false;
          continue;
        }
        z[i] -= step;
        if (std::abs(step) < opts.step_tolerance * (1.0 + std::abs(z[i]))) {
          done[i] = true;
        } else {
          converged = false;
        }
      }
    }
    out.iterations = iter;
    if (!converged) {
      // Step tolerance can stall at rounding level for clustered roots;
      // accept only if every root meets the residual bound.
      const Polynomial deflated(c);
      for (const auto& r : z) {
        if (!(std::abs(deflated(r)) <= opts.residual_tolerance * deflated.magnitude_bound(r))) {
          throw Error(ErrorKind::NoConvergence,
                      "Aberth iteration did not converge in " +
                          std::to_string(opts.max_iterations) + " iterations");
        }
      }
    }
    out.roots = std::move(z);
  }
  out.roots.insert(out.roots.end(), zeros, Complex(0.0));
  return out;
}

inline ComplexVector roots(const Polynomial& p) { return find_roots(p).roots; }

// ---------------------------------------------------------------------------

/// z^t. Integral exponents use repeated squaring (exact for small integer
/// powers); others use exp(t Log z) on the principal branch.
inline Complex complex_power(Complex z, double t) {
  double whole = 0.0;
  if (std::modf(t, &whole) == 0.0 && std::abs(t) < 1e15) {
    auto n = static_cast<long long>(std::abs(t));
    Complex base = z;
    Complex acc = 1.0;
    while (n > 0) {
      if (n & 1) acc *= base;
      base *= base;
      n >>= 1;
    }
    return t < 0 ? 1.0 / acc : acc;
  }
  return std::exp(t * std::log(z));
}

/// Matrix with entry (i, k) = nodes[k]^powers[i].
inline ComplexMatrix vandermonde(std::span<const Complex> nodes, std::span<const double> powers) {
  for (const auto& z : nodes) {
    if (z == Complex(0.0)) throw Error(ErrorKind::ZeroNode, "vandermonde node is zero");
  }
  ComplexMatrix v(powers.size(), nodes.size());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    for (std::size_t k = 0; k < nodes.size(); ++k) v(i, k) = complex_power(nodes[k], powers[i]);
  }
  return v;
}

}  // namespace expsum
