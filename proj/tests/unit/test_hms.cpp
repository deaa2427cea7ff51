#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "schurlab/error.hpp"
#include "schurlab/hms.hpp"

using namespace schurlab;
using namespace schurlab::hms;

TEST(Hms, ChebyshevLobattoGridsNest) {
  const auto coarse = chebyshev_lobatto(-1, 2, 9);
  const auto fine = chebyshev_lobatto(-1, 2, 17);
  for (std::size_t i = 0; i < coarse.size(); ++i) EXPECT_NEAR(coarse[i], fine[2 * i], 1e-15);
  EXPECT_EQ(fine.front(), -1);
  EXPECT_EQ(fine.back(), 2);
}

TEST(Hms, KsSymbolNormIsOnePlusTwiceS) {
  for (double s : {0.0, 1.0, 3.0}) {
    for (int sigma : {1, -1}) {
      GridSpec g;
      g.points = 128;
      const auto r = hms_norm(ks_symbol(s, sigma), g);
      EXPECT_NEAR(r.norm, 1 + 2 * std::abs(s), 1e-12);
      EXPECT_GT(r.evaluated, 0);
    }
  }
}

TEST(Hms, FiniteDifferenceFallbackAgrees) {
  auto full = divdiff_symbol(divdiff::sine(), 1, 1);
  auto bare = full;
  bare.d_lambda = nullptr;
  bare.d_mu = nullptr;
  GridSpec g;
  g.points = 64;
  EXPECT_NEAR(hms_norm(full, g).norm, hms_norm(bare, g).norm, 1e-6);
}

TEST(Hms, HmsBoundHoldsForDividedDifferenceSymbols) {
  GridSpec g;
  g.lo = -2;
  g.hi = 2;
  g.points = 96;
  for (const char* name : {"sq", "cube", "sin", "cos", "exp"}) {
    const auto f = divdiff::by_name(name);
    for (int n = 1; n <= std::min(3, f.max_order); ++n)
      for (int k = 0; k <= n + 1; ++k)
        for (bool sign : {false, true}) {
          const auto r = hms_norm(divdiff_symbol(f, n, k, sign), g);
          // absolute slack covers rounding when f^(n) vanishes identically
          EXPECT_LE(r.norm, hms_bound(n, k, f, g.lo, g.hi) * (1 + 1e-12) + 1e-6) << name << n << k;
        }
  }
}

TEST(Hms, SupDerivativeFindsInteriorMaximum) {
  EXPECT_NEAR(sup_derivative(divdiff::sine(), 2, 0, 3), 1.0, 1e-14);
  EXPECT_NEAR(sup_derivative(divdiff::exponential(), 3, -1, 1), std::exp(1.0), 1e-14);
}

TEST(Hms, PointwiseBoundOnRandomPairs) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 2000; ++i) pts.emplace_back(u(rng), u(rng));
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= n; ++k)
      for (int gamma = 0; gamma <= std::min(k, n + 1 - k); ++gamma) {
        const auto r = pointwise_bound_check(n, k, gamma, divdiff::sine(), pts);
        EXPECT_LE(r.max_violation, 1e-9) << n << k << gamma;
      }
}

TEST(Hms, Errors) {
  GridSpec g;
  g.margin = 0;
  EXPECT_THROW(hms_norm(ks_symbol(1), g), Error);
  try {
    hms_norm(ks_symbol(1), g);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DiagonalMargin);
  }
  EXPECT_THROW(ks_symbol(1, 0), Error);
  EXPECT_THROW(divdiff_symbol(divdiff::sine(), 2, 4), Error);
}
