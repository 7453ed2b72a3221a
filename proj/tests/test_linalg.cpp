#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "expsum/linalg.hpp"
#include "test_support.hpp"

namespace expsum {
namespace {

using namespace std::complex_literals;

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

ComplexVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (auto& e : v) e = Complex(g(rng), g(rng));
  return v;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorKind::IoError;
}

TEST(ComplexMatrix, RejectsBadShape) {
  EXPECT_EQ(kind_of([] { ComplexMatrix(2, 2, ComplexVector(3)); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([] { ComplexMatrix(1, 1, {Complex(NAN, 0)}); }), ErrorKind::NonFiniteValue);
}

TEST(Solve, Identity) {
  const ComplexVector b{1.0, 2i, 3.0};
  const auto sol = solve(ComplexMatrix::identity(3), b);
  EXPECT_EQ(sol.x, b);
  EXPECT_EQ(sol.residual, 0.0);
}

TEST(Solve, TwoByTwoBySubstitution) {
  const ComplexMatrix a(2, 2, {1.0, 1.0, 1.0, -1.0});
  const ComplexVector b{2.0, 0.0};
  const auto sol = solve(a, b);
  EXPECT_NEAR(std::abs(sol.x[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sol.x[1] - 1.0), 0.0, 1e-15);
  // Substitution oracle.
  const auto ax = a.apply(sol.x);
  EXPECT_LE(std::abs(ax[0] - b[0]) + std::abs(ax[1] - b[1]), 1e-15);
}

TEST(Solve, SingularAndMismatched) {
  const ComplexMatrix a(2, 2, {1.0, 1.0, 1.0, 1.0});
  const ComplexVector b{1.0, 2.0};
  EXPECT_EQ(kind_of([&] { solve(a, b); }), ErrorKind::SingularMatrix);
  EXPECT_EQ(kind_of([&] { solve(ComplexMatrix(2, 2), b); }), ErrorKind::SingularMatrix);
  EXPECT_EQ(kind_of([&] { solve(ComplexMatrix(2, 3), b); }), ErrorKind::DimensionMismatch);
  const ComplexVector short_b{1.0};
  EXPECT_EQ(kind_of([&] { solve(a, short_b); }), ErrorKind::DimensionMismatch);
}

TEST(SolveProperty, SmallResidualOnWellConditionedSystems) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    auto a = random_matrix(rng, n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(2 * n);
    const auto b = random_vector(rng, n);
    const auto sol = solve(a, b);
    const double bound = 1e-9 * (a.norm_inf() * norm_inf(sol.x) + norm_inf(b));
    EXPECT_LE(sol.residual, bound);
  }
}

TEST(LeastSquares, MeanOfColumnOfOnes) {
  const ComplexMatrix a(3, 1, {1.0, 1.0, 1.0});
  const ComplexVector b{1.0, 2.0, 3.0};
  const auto sol = least_squares(a, b);
  ASSERT_EQ(sol.x.size(), 1u);
  EXPECT_NEAR(std::abs(sol.x[0] - 2.0), 0.0, 1e-14);
}

TEST(LeastSquares, NormalEquationResidualVanishes) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_matrix(rng, 6, 3);
    const auto b = random_vector(rng, 6);
    const auto x = least_squares(a, b).x;
    // Oracle: a^H (a x - b) = 0 at the minimizer.
    const auto ax = a.apply(x);
    double worst = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      Complex g = 0.0;
      for (std::size_t i = 0; i < 6; ++i) g += std::conj(a(i, j)) * (ax[i] - b[i]);
      worst = std::max(worst, std::abs(g));
    }
    EXPECT_LE(worst, 1e-9 * a.norm_inf() * norm_inf(b));
  }
}

TEST(LeastSquares, ConsistentSquareSystemMatchesSolve) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    auto a = random_matrix(rng, n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
    const auto b = random_vector(rng, n);
    const auto x1 = solve(a, b).x;
    const auto x2 = least_squares(a, b).x;
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_LE(std::abs(x1[i] - x2[i]), 1e-10 * norm_inf(x1));
    }
  }
}

TEST(LeastSquares, Errors) {
  const ComplexMatrix deficient(3, 2, {1.0, 2.0, 2.0, 4.0, 3.0, 6.0});
  const ComplexVector b{1.0, 2.0, 3.0};
  EXPECT_EQ(kind_of([&] { least_squares(deficient, b); }), ErrorKind::RankDeficient);
  const ComplexMatrix wide(1, 2, {1.0, 1.0});
  const ComplexVector b1{1.0};
  EXPECT_EQ(kind_of([&] { least_squares(wide, b1); }), ErrorKind::DimensionMismatch);
}

TEST(BasicLeastSquares, ReportsRankAndSatisfiesConsistentSystem) {
  const ComplexMatrix a(2, 2, {5.0, 5.0, 5.0, 5.0});
  const ComplexVector b{5.0, 5.0};
  const auto basic = basic_least_squares(a, b);
  EXPECT_EQ(basic.rank, 1u);
  EXPECT_LE(basic.solution.residual, 1e-14);
}

TEST(Roots, Quadratics) {
  auto r = roots(Polynomial({-1.0, 0.0, 1.0}));
  EXPECT_LE(testing::root_set_error({1.0, -1.0}, r), 1e-14);
  r = roots(Polynomial({1.0, 0.0, 1.0}));
  EXPECT_LE(testing::root_set_error({1i, -1i}, r), 1e-14);
}

TEST(Roots, LinearAndZeroRoots) {
  auto r = roots(Polynomial({-3.0, 2.0}));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_LE(std::abs(r[0] - 1.5), 1e-15);
  // z^2 (z - 2)
  r = roots(Polynomial({0.0, 0.0, -2.0, 1.0}));
  EXPECT_LE(testing::root_set_error({0.0, 0.0, 2.0}, r), 1e-14);
  EXPECT_EQ(std::count(r.begin(), r.end(), Complex(0.0)), 2);
}

TEST(Roots, InvalidPolynomials) {
  EXPECT_EQ(kind_of([] { roots(Polynomial({3.0})); }), ErrorKind::InvalidPolynomial);
  EXPECT_EQ(kind_of([] { Polynomial({1.0, 0.0}); }), ErrorKind::InvalidPolynomial);
  EXPECT_EQ(kind_of([] { Polynomial(ComplexVector{}); }), ErrorKind::InvalidPolynomial);
}

TEST(Roots, ReportsNoConvergenceWhenCapped) {
  // One iteration is not enough for a degree-8 polynomial.
  const std::vector<Complex> r{0.5, 0.7, 0.9, 1.1, 1.3, -0.8, 2i, -2i};
  EXPECT_EQ(kind_of([&] { find_roots(Polynomial::from_roots(r), {.max_iterations = 1}); }),
            ErrorKind::NoConvergence);
}

TEST(RootsProperty, RecoversKnownRoots) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const auto truth = testing::random_roots(rng, d, 0.5, 2.0, 0.1);
    const auto p = Polynomial::from_roots(truth);
    const auto found = find_roots(p);
    EXPECT_LE(testing::root_set_error(truth, found.roots), 1e-8);
    EXPECT_LE(found.iterations, 500);
    for (const auto& z : found.roots) {
      EXPECT_LE(std::abs(p(z)), 1e-10 * p.magnitude_bound(z));
    }
  }
}

TEST(RootsProperty, RealCoefficientsGiveConjugateClosedRoots) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
    ComplexVector c(d + 1);
    for (auto& e : c) e = g(rng);
    c.back() = 1.0 + std::abs(g(rng));
    const auto r = roots(Polynomial(c));
    std::vector<Complex> conj;
    for (const auto& z : r) conj.push_back(std::conj(z));
    EXPECT_LE(testing::root_set_error(conj, r), 1e-8);
  }
}

TEST(Vandermonde, Examples) {
  auto v = vandermonde(ComplexVector{1.0}, std::vector<double>{1, 2, 3});
  ASSERT_EQ(v.rows(), 3u);
  ASSERT_EQ(v.cols(), 1u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(v(i, 0), Complex(1.0));

  v = vandermonde(ComplexVector{2.0, 3.0}, std::vector<double>{1, 2});
  EXPECT_EQ(v(0, 0), Complex(2.0));
  EXPECT_EQ(v(0, 1), Complex(3.0));
  EXPECT_EQ(v(1, 0), Complex(4.0));
  EXPECT_EQ(v(1, 1), Complex(9.0));

  v = vandermonde(ComplexVector{std::exp(0.1)}, std::vector<double>{10});
  EXPECT_NEAR(v(0, 0).real(), std::exp(1.0), 1e-14);
  EXPECT_EQ(v(0, 0).imag(), 0.0);

  v = vandermonde(ComplexVector{2.0}, std::vector<double>{-1, 0.5});
  EXPECT_EQ(v(0, 0), Complex(0.5));
  EXPECT_NEAR(std::abs(v(1, 0) - std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(Vandermonde, ZeroNode) {
  EXPECT_EQ(kind_of([] { vandermonde(ComplexVector{1.0, 0.0}, std::vector<double>{1}); }),
            ErrorKind::ZeroNode);
}

}  // namespace
}  // namespace expsum
