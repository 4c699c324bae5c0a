#include <gtest/gtest.h>

#include "rosen/errors.hpp"
#include "rosen/quadrature.hpp"

using namespace rosen;

namespace {
const Precision P{256};
}

TEST(Quadrature, Polynomial) {
  const auto r = integrate([](const Real& x) { return x * x; }, Real(0L, P), Real(3L, P));
  EXPECT_LT(abs(r.value - 9).to_double(), 1e-12);
  EXPECT_GT(r.evaluations, 0);
}

TEST(Quadrature, LogarithmToRelativeTolerance) {
  QuadratureOptions o;
  o.abs_tol = 0;
  o.rel_tol = 1e-20;
  const auto r = integrate([](const Real& x) { return 1 / x; }, Real(1L, P), Real(2L, P), o);
  EXPECT_LT(abs(r.value / log(Real(2L, P)) - 1).to_double(), 1e-19);
}

TEST(Quadrature, TinyIntegralsKeepRelativeAccuracy) {
  QuadratureOptions o;
  o.abs_tol = 0;
  o.rel_tol = 1e-14;
  const Real scale = exp2i(-200, P);
  const auto r = integrate([&scale](const Real& x) { return scale * x; }, Real(0L, P), Real(1L, P), o);
  EXPECT_LT(abs(r.value / scale - Real(0.5, P)).to_double(), 1e-14);
}

TEST(Quadrature, EmptyInterval) {
  const auto r = integrate([](const Real& x) { return x; }, Real(1L, P), Real(1L, P));
  EXPECT_TRUE(r.value.is_zero());
}

TEST(Quadrature, DepthLimitThrows) {
  QuadratureOptions o;
  o.abs_tol = 1e-40;
  o.max_depth = 3;
  auto rough = [](const Real& x) { return x < 0.3141 ? Real(0L, x.precision()) : Real(1L, x.precision()); };
  EXPECT_THROW(integrate(rough, Real(0L, P), Real(1L, P), o), IntegrationFailure);
}

TEST(Quadrature, Reproducible) {
  auto f = [](const Real& x) { return exp(-x * x); };
  const auto a = integrate(f, Real(0L, P), Real(2L, P));
  const auto b = integrate(f, Real(0L, P), Real(2L, P));
  EXPECT_TRUE(a.value == b.value);
  EXPECT_EQ(a.evaluations, b.evaluations);
}
