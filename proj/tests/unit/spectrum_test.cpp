#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rosen/errors.hpp"
#include "rosen/spectrum.hpp"

using namespace rosen;

namespace {

const Precision P{256};

// Interior point of region A: t uniform, then v uniform over the slice.
ExtPoint sample_a(const DomainSpec& d, const RegionA& a, RandomStream& rng) {
  for (;;) {
    const Real t = a.tau0 + (a.t_end - a.tau0) * rng.uniform_real(d.prec);
    const Real lo = a.lower(t);
    if (!(lo < a.top)) continue;
    const Real v = lo + (a.top - lo) * rng.uniform_real(d.prec);
    const ExtPoint p{t, v};
    if (in_region_a(d, p)) return p;
  }
}

// Theta_{n-1}, Theta_n, Theta_{n+1} at p, taking digits from p.t.
std::array<Real, 3> thetas(const DomainSpec& d, const ExtPoint& p) {
  const auto step = rosen_step(p.t, d.lambda);
  const int eps2 = step.next.sign() < 0 ? -1 : 1;
  auto [prev, cur] = theta_from_tv(p, step.digit.epsilon);
  return {prev, cur, theta_next(p, step.digit, eps2, d.lambda)};
}

}  // namespace

TEST(Hurwitz, MatchesOracle) {
  for (int q = 3; q <= 16; ++q) {
    const Real want = oracle::real(oracle::data()["hurwitz"][std::to_string(q)]);
    EXPECT_LT(oracle::rel_diff(hurwitz_constant(q, P), want), 1e-45) << "q=" << q;
  }
  EXPECT_LT(abs(hurwitz_constant(3, P) - 1 / sqrt(Real(5L, P))).to_double(), 1e-70);
  EXPECT_LT(abs(hurwitz_constant(9, P) - Real::parse("0.4990932276893498", P)).to_double(), 1e-16);
}

TEST(Flushing, TauMatchesOracle) {
  for (int q : {4, 5, 6, 7, 8, 9, 10}) {
    const DomainSpec d = build_domain(q, P);
    const auto want = oracle::reals(oracle::data()["tau"][std::to_string(q)]);
    for (int k = 0; k < static_cast<int>(want.size()); ++k) {
      EXPECT_LT(oracle::rel_diff(tau(d, k), want[static_cast<std::size_t>(k)]), 1e-40) << q << " " << k;
    }
  }
}

TEST(Flushing, TauIncreasesToEvenLimit) {
  for (int q : {6, 8, 10, 12}) {
    const DomainSpec d = build_domain(q, P);
    Real prev = tau(d, 0);
    // Strictly increasing until the gaps drop below the working precision.
    for (int k = 1; k <= 60; ++k) {
      const Real t = tau(d, k);
      if (k <= 12) {
        EXPECT_GT(t, prev) << q << " " << k;
      } else {
        EXPECT_GE(t, prev) << q << " " << k;
      }
      prev = t;
    }
    EXPECT_LT(abs(prev + 1 / (d.lambda + 1)).to_double(), 1e-12) << q;
  }
  const DomainSpec d9 = build_domain(9, P);
  const Real limit = oracle::real(oracle::data()["tau_limit"]["9"]);
  EXPECT_LT(abs(tau(d9, 60) - limit).to_double(), 1e-12);
}

TEST(Tong, ConstantsMatchOracleAndDecreaseToHurwitz) {
  for (int q : {4, 5, 8, 9}) {
    const DomainSpec d = build_domain(q, P);
    const auto want = oracle::reals(oracle::data()["tong"][std::to_string(q)]);
    for (int k = 1; k <= static_cast<int>(want.size()); ++k) {
      EXPECT_LT(oracle::rel_diff(tong_constant(d, k), want[static_cast<std::size_t>(k - 1)]), 1e-40);
    }
    const Real H = hurwitz_constant(q, P);
    Real prev = tong_constant(d, 1);
    for (int k = 2; k <= 61; ++k) {
      const Real c = tong_constant(d, k);
      if (k <= 12) {
        EXPECT_LT(c, prev) << q << " " << k;
      } else {
        EXPECT_LE(c, prev) << q << " " << k;
      }
      EXPECT_GT(c - H, -1e-60);
      prev = c;
    }
    EXPECT_LT((prev - H).to_double(), 1e-10) << q;
  }
  const DomainSpec d8 = build_domain(8, P);
  EXPECT_LT(abs(tong_constant(d8, 1) - 2 / (d8.lambda + 2)).to_double(), 1e-60);
  EXPECT_THROW(tong_constant(d8, 0), InvalidParameter);
}

TEST(Tong, ClassicalConstants) {
  const auto want = oracle::reals(oracle::data()["classical_tong"]);
  for (int k = 1; k <= 5; ++k) {
    EXPECT_LT(oracle::rel_diff(classical_tong_constant(k, P), want[static_cast<std::size_t>(k - 1)]), 1e-45);
  }
}

TEST(Tong, PrintedOddVariantDiffers) {
  const DomainSpec d = build_domain(9, P);
  EXPECT_GT(abs(tong_constant_printed_odd(d, 1) - tong_constant(d, 1)).to_double(), 1e-3);
}

TEST(Measures, MatchOracle) {
  for (int q : {4, 5, 6, 7, 8, 9, 10}) {
    const DomainSpec d = build_domain(q, P);
    const auto want = oracle::reals(oracle::data()["nu_Ak"][std::to_string(q)]);
    for (int k = 0; k < 3; ++k) {
      EXPECT_LT(oracle::rel_diff(nu_Ak(d, k), want[static_cast<std::size_t>(k)]), 1e-9) << q << " " << k;
    }
  }
}

TEST(Measures, ClosedFormAgreesWithQuadrature) {
  for (int q : {6, 8, 10, 7, 9, 11}) {
    const DomainSpec d = build_domain(q, P);
    for (int k = 0; k < 3; ++k) {
      EXPECT_LT(oracle::rel_diff(nu_Ak_closed(d, k), nu_Ak_quadrature(d, k)), 1e-12) << q << " " << k;
    }
  }
}

TEST(Measures, EvenRegionAFormula) {
  const DomainSpec d = build_domain(8, P);
  const Real& lam = d.lambda;
  const Real c = 1 / log((1 + lam / 2) / sin(Real::pi(P) / 8));
  const Real nu = c * ((lam - 2) / 4 + log(4 / (lam + 2)));
  EXPECT_LT(oracle::rel_diff(nu_A(d), nu), 1e-60);
}

TEST(RegionA, VerticesMapOntoD1) {
  const DomainSpec d = build_domain(8, P);
  const Real& lam = d.lambda;
  const Real t0 = Real(-2L, P) / (3 * lam);
  const Real t1 = -1 / (lam + 1);
  const struct {
    ExtPoint from, to;
  } cases[] = {
      {{t0, lam - 1}, {-lam / 2, 1 / (lam + 1)}},
      {{t1, lam - 1}, {1 - lam, 1 / (lam + 1)}},
      {{t0, (3 * lam - 4) / 2}, {-lam / 2, 2 / (lam + 4)}},
  };
  for (const auto& c : cases) {
    const ExtPoint img = natural_extension_step(c.from, lam).point;
    EXPECT_LT(abs(img.t - c.to.t).to_double(), 1e-20);
    EXPECT_LT(abs(img.v - c.to.v).to_double(), 1e-20);
  }
}

TEST(RegionA, ImageIsD1AndThetaOrdering) {
  for (int q : {8, 9}) {
    const DomainSpec d = build_domain(q, P);
    const RegionA a = region_a(d);
    RandomStream rng(5, static_cast<std::uint64_t>(q));
    for (int i = 0; i < 1000; ++i) {
      const ExtPoint p = sample_a(d, a, rng);
      EXPECT_EQ(classify(d, p), RegionLabel::A);
      const auto th = thetas(d, p);
      EXPECT_GT(th[2], th[0]);
      EXPECT_GT(th[0], th[1]);
      const ExtPoint img = natural_extension_step(p, d.lambda).point;
      EXPECT_EQ(classify(d, img), RegionLabel::D1) << "q=" << q;
    }
  }
}

TEST(Classify, LabelsAgreeWithTheta) {
  for (int q : {5, 6, 8, 9, 12}) {
    const DomainSpec d = build_domain(q, P);
    const Real H = hurwitz_constant(q, P);
    RandomStream rng(3, static_cast<std::uint64_t>(q));
    for (int orbit = 0; orbit < 20; ++orbit) {
      ExtPoint p{rng.uniform_real(P) * d.lambda - d.lambda / 2, Real(P)};
      for (int n = 0; n < 200; ++n) {
        p = natural_extension_step(p, d.lambda).point;
        const auto [prev, cur] = theta_from_tv(p, p.t.sign() < 0 ? -1 : 1);
        const Real m = min(prev, abs(cur));
        if (abs(m - H) < 1e-9) continue;
        EXPECT_EQ(classify(d, p) != RegionLabel::OutsideD, m > H) << "q=" << q;
      }
    }
  }
}

TEST(Classify, Examples) {
  const DomainSpec d = build_domain(8, P);
  EXPECT_EQ(classify(d, ExtPoint{Real(P), Real(P)}), RegionLabel::OutsideD);
  EXPECT_EQ(classify(d, ExtPoint{Real(-0.92, P), Real(0.35, P)}), RegionLabel::D1);
  EXPECT_THROW(classify(d, ExtPoint{Real(0.1, P), Real(2L, P)}), OutsideOmega);
  EXPECT_EQ(component(d, RegionLabel::A), RegionLabel::D2);
  EXPECT_EQ(component(build_domain(9, P), RegionLabel::B), RegionLabel::D3);
  EXPECT_EQ(to_string(RegionLabel::C1), "C1");
}

TEST(FixedPoints, EvenSeedIsTheCorner) {
  const DomainSpec d = build_domain(8, P);
  const FixedPointSet f = fixed_points(d);
  EXPECT_LT(abs(f.seed.t + 1 / (d.lambda + 1)).to_double(), 1e-60);
  EXPECT_LT(abs(f.seed.v - (d.lambda - 1)).to_double(), 1e-60);
  EXPECT_LT(f.residual.to_double(), 1e-25);
  EXPECT_EQ(f.orbit.size(), 3U);
}

TEST(FixedPoints, OddCycle) {
  const DomainSpec d = build_domain(9, P);
  const FixedPointSet f = fixed_points(d);
  EXPECT_LT(f.residual.to_double(), 1e-15);
  EXPECT_EQ(static_cast<int>(f.orbit.size()), d.round_length);
  EXPECT_LT(abs(f.seed.t - oracle::real(oracle::data()["tau_limit"]["9"])).to_double(), 1e-40);
}

TEST(SpectrumTable, RowsAndClassicalPath) {
  const SpectrumTable t = spectrum_table(8, 3, P);
  ASSERT_EQ(t.rows.size(), 4U);
  EXPECT_EQ(t.rows[1].block_len, 5);
  EXPECT_TRUE(t.rows[0].nu.has_value());
  EXPECT_TRUE(t.tau_limit.has_value());
  const SpectrumTable c = spectrum_table(3, 2, P);
  ASSERT_EQ(c.rows.size(), 2U);
  EXPECT_FALSE(c.rows[0].tau.has_value());
  EXPECT_EQ(c.rows[0].block_len, 3);
}
