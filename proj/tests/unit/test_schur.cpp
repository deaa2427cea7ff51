#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "schurlab/error.hpp"
#include "schurlab/schur.hpp"

using namespace schurlab;
using namespace schurlab::schur;

namespace {

ComplexMatrix random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  ComplexMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = Complex(nd(rng), nd(rng));
  return a;
}

Grid3 random_grid3(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  ComplexMatrix blocks(n * n, n);
  for (int r = 0; r < n * n; ++r)
    for (int c = 0; c < n; ++c) blocks(r, c) = Complex(nd(rng), nd(rng));
  return grid3_from_blocks(blocks);
}

Complex inner(const ComplexMatrix& a, const ComplexMatrix& b) { return (a.adjoint() * b).trace(); }

EstimateOptions small_budget(std::uint64_t seed, int restarts = 6, int iterations = 60) {
  EstimateOptions o;
  o.budget = {restarts, iterations};
  o.seed = seed;
  o.threads = 1;
  return o;
}

}  // namespace

TEST(Schur, PointSetValidation) {
  EXPECT_THROW(PointSet({1, 1}), Error);
  EXPECT_THROW(PointSet({2, 1}), Error);
  EXPECT_THROW(PointSet({}), Error);
  EXPECT_EQ(PointSet::integers(4)[3], 4);
}

TEST(Schur, BilinearMatchesTripleSum) {
  const int n = 6;
  const auto m = random_grid3(n, 1);
  const ComplexMatrix a = random_matrix(n, 2), b = random_matrix(n, 3);
  const ComplexMatrix c = apply_bilinear(m, a, b);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      Complex acc = 0;
      for (int j = 0; j < n; ++j) acc += m(i, j, l) * a(i, j) * b(j, l);
      EXPECT_LT(std::abs(c(i, l) - acc), 1e-12);
    }
}

TEST(Schur, ConstantSymbolGivesMatrixProduct) {
  const int n = 5;
  const auto x = PointSet::integers(n);
  const auto one = DiscreteSymbol::bilinear([](double, double, double) { return Complex(1); });
  const ComplexMatrix a = random_matrix(n, 4), b = random_matrix(n, 5);
  EXPECT_LT((apply_bilinear(one, x, a, b) - a * b).norm(), 1e-12);
}

TEST(Schur, AdjointsSatisfyPairingIdentity) {
  const int n = 7;
  const auto m = random_grid3(n, 9);
  const ComplexMatrix a = random_matrix(n, 10), b = random_matrix(n, 11), g = random_matrix(n, 12);
  const Complex lhs = inner(g, apply_bilinear(m, a, b));
  EXPECT_LT(std::abs(inner(bilinear_adjoint_first(m, g, b), a) - lhs), 1e-10);
  EXPECT_LT(std::abs(inner(bilinear_adjoint_second(m, g, a), b) - lhs), 1e-10);

  const auto m2 = grid2_from_matrix(random_matrix(n, 13));
  EXPECT_LT(std::abs(inner(g, apply_linear(m2, a)) - inner(apply_linear_adjoint(m2, g), a)), 1e-10);
}

TEST(Schur, TriangularTruncationSplitsOffDiagonal) {
  const int n = 6;
  const auto x = PointSet({-1.5, -0.2, 0.0, 0.7, 2.0, 9.0});
  const ComplexMatrix a = random_matrix(n, 14);
  const ComplexMatrix up = triangular_truncation(a, x, Triangle::upper);
  const ComplexMatrix lo = triangular_truncation(a, x, Triangle::lower);
  EXPECT_LT((up + lo + diagonal_part(a) - a).norm(), 1e-15);
  EXPECT_EQ(up(0, 5), a(0, 5));
  EXPECT_EQ(up(5, 0), Complex(0));
  EXPECT_LT((apply_linear(m_plus(), x, a) - (up - lo)).norm(), 1e-15);
  EXPECT_LT((apply_linear(t_plus(), x, a) - up).norm(), 1e-15);
}

TEST(Schur, LinearHilbertSchmidtNormIsSupremum) {
  const int n = 8;
  const auto m = grid2_from_matrix(random_matrix(n, 20));
  const auto est = norm_lower_estimate(m, 2, 2, small_budget(1, 3, 0));
  EXPECT_EQ(est.restart, 0);
  EXPECT_NEAR(est.ratio, m.sup, 1e-14 * m.sup);
}

TEST(Schur, EstimatesAreDeterministicAcrossThreadCounts) {
  const int n = 10;
  const auto m = tabulate2(m_plus(), PointSet::integers(n));
  auto o1 = small_budget(42);
  auto o3 = o1;
  o3.threads = 3;
  const auto e1 = norm_lower_estimate(m, 4, 4, o1);
  const auto e3 = norm_lower_estimate(m, 4, 4, o3);
  EXPECT_EQ(e1.ratio, e3.ratio);
  EXPECT_EQ(e1.restart, e3.restart);
}

TEST(Schur, EstimateIsCertifiedRatioOfReturnedCandidate) {
  const int n = 9;
  const auto m = tabulate2(m_plus(), PointSet::integers(n));
  const auto e = norm_lower_estimate(m, 3, 3, small_budget(5));
  EXPECT_DOUBLE_EQ(e.ratio, linear_ratio(m, e.x, 3, 3));
  EXPECT_GT(e.ratio, 1.0);  // the triangular projection is not contractive for p != 2
}

TEST(Schur, BilinearHilbertSchmidtBoundHoldsForArbitrarySymbols) {
  // |C_il| <= sup|m| (|A||B|)_il, so S2 x S2 -> S2 is bounded by sup|m|.
  for (std::uint64_t seed = 30; seed < 33; ++seed) {
    const auto m = random_grid3(6, seed);
    const auto e = norm_lower_estimate(m, 2, 2, 2, small_budget(seed, 4, 40));
    EXPECT_LE(e.ratio, m.sup + 1e-9);
  }
}

TEST(Schur, HolderExponentsCanExceedSupForTriangularSymbols) {
  // m(i, j, l) = [j < l] gives C = A T+(B). With Y = T+(B) and A = (Y Y^*)^{1/2}
  // the (4,4,2) ratio equals ||T+(B)||_4 / ||B||_4, the S4 truncation ratio.
  const int n = 24;
  const auto x = PointSet::integers(n);
  const auto tp = tabulate2(t_plus(), x);
  const auto est = norm_lower_estimate(tp, 4, 4, small_budget(3, 8, 80));
  const ComplexMatrix y = apply_linear(tp, est.x);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(y * y.adjoint());
  const ComplexMatrix a =
      es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  const auto m = tabulate3(DiscreteSymbol::bilinear([](double, double j, double l) {
                             return Complex(j < l ? 1.0 : 0.0);
                           }),
                           x);
  EXPECT_GT(bilinear_ratio(m, a, est.x, 4, 4, 2), 1.1 * m.sup);
}

TEST(Schur, DimensionErrors) {
  const auto m = random_grid3(4, 1);
  EXPECT_THROW(apply_bilinear(m, random_matrix(3, 1), random_matrix(4, 1)), Error);
  EXPECT_THROW(grid3_from_blocks(ComplexMatrix::Zero(5, 4)), Error);
  EXPECT_THROW(norm_lower_estimate(grid2_from_matrix(random_matrix(3, 1)), 0.5, 2, small_budget(1)), Error);
}
