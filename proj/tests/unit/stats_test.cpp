#include <gtest/gtest.h>

#include <cmath>

#include "rosen/errors.hpp"
#include "rosen/stats.hpp"

using namespace rosen::stats;

TEST(ChiSquare, PerfectFitPasses) {
  const std::vector<double> e(10, 100.0);
  const auto r = chi_square(e, e);
  EXPECT_DOUBLE_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.dof, 9);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.critical, 27.877, 1e-3);
}

TEST(ChiSquare, GrossMisfitFails) {
  const std::vector<double> o{200, 0, 100, 100};
  const std::vector<double> e{100, 100, 100, 100};
  const auto r = chi_square(o, e);
  EXPECT_DOUBLE_EQ(r.statistic, 200.0);
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.p_value, 1e-10);
}

TEST(ChiSquare, PoolsSmallCells) {
  const std::vector<double> o{1, 1, 1, 1, 1, 1, 50};
  const std::vector<double> e{1, 1, 1, 1, 1, 1, 50};
  const auto r = chi_square(o, e);
  EXPECT_EQ(r.cells, 2);
  EXPECT_THROW(chi_square({1.0}, {1.0, 2.0}), rosen::InvalidParameter);
}

TEST(ChiSquare, Quantile) {
  EXPECT_NEAR(chi_square_quantile(1, 0.95), 3.841, 1e-3);
}

TEST(Poisson, IntervalCoversMean) {
  const auto iv = poisson_interval(4.13, 0.99);
  EXPECT_EQ(iv.lo, 0);
  EXPECT_GE(iv.hi, 9);
  EXPECT_LE(iv.hi, 11);
  const auto big = poisson_interval(1000, 0.99);
  EXPECT_LT(big.lo, 1000);
  EXPECT_GT(big.hi, 1000);
  EXPECT_NEAR(big.hi - 1000, 2.576 * std::sqrt(1000.0), 3.0);
  EXPECT_EQ(poisson_interval(0).hi, 0);
}

TEST(Binomial, StandardError) {
  EXPECT_DOUBLE_EQ(binomial_se(0.5, 100), 0.05);
  EXPECT_DOUBLE_EQ(binomial_se(0.5, 0), 0.0);
}
