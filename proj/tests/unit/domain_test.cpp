#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rosen/domain.hpp"
#include "rosen/errors.hpp"

using namespace rosen;

namespace {
const Precision P{256};
}

TEST(Domain, HeightsRAndCMatchOracle) {
  for (int q = 4; q <= 16; ++q) {
    const auto& o = oracle::data()["domain"][std::to_string(q)];
    const DomainSpec d = build_domain(q, P);
    const auto L = oracle::reals(o["L"]);
    ASSERT_EQ(d.L.size(), L.size()) << "q=" << q;
    for (std::size_t j = 0; j < L.size(); ++j) {
      EXPECT_LT(oracle::rel_diff(d.L[j], L[j]), 1e-40) << "q=" << q << " L_" << j + 1;
    }
    EXPECT_LT(oracle::rel_diff(d.R, oracle::real(o["R"])), 1e-40) << "q=" << q;
    EXPECT_LT(oracle::rel_diff(d.C, oracle::real(o["C"])), 1e-40) << "q=" << q;
    const auto phi = oracle::reals(o["phi"]);
    ASSERT_EQ(d.phi.size(), phi.size());
    for (std::size_t j = 0; j + 1 < phi.size(); ++j) {
      EXPECT_LT(oracle::rel_diff(d.phi[j], phi[j]), 1e-40) << "q=" << q << " phi_" << j;
    }
    EXPECT_TRUE(d.phi.back().is_zero());
  }
}

TEST(Domain, EvenIdentities) {
  for (int q : {4, 6, 8, 10, 12}) {
    const DomainSpec d = build_domain(q, P);
    const Real& lam = d.lambda;
    EXPECT_LT(abs(d.R - 1).to_double(), 1e-12);
    EXPECT_LT(abs(d.L_at(1) - 1 / (lam + 1)).to_double(), 1e-12);
    EXPECT_LT(abs(d.L_at(d.p - 1) - (lam - 1)).to_double(), 1e-12);
    EXPECT_EQ(d.round_length, d.p - 1);
  }
}

TEST(Domain, OddQuadraticAndRelations) {
  for (int q : {5, 7, 9, 11, 13}) {
    const DomainSpec d = build_domain(q, P);
    const Real& R = d.R;
    EXPECT_LT(abs(R * R + (2 - d.lambda) * R - 1).to_double(), 1e-60);
    EXPECT_EQ(d.round_length, 2 * d.h + 1);
    EXPECT_EQ(static_cast<int>(d.strips.size()), 2 * d.h + 2);
  }
}

TEST(Domain, RelationResidualsVanish) {
  for (int q = 4; q <= 16; ++q) {
    const HeightSolution s = solve_heights(q, P);
    for (const Real& r : relation_residuals(q, s.L, s.R, lambda(q, P))) {
      EXPECT_LT(r.to_double(), 1e-70) << "q=" << q;
    }
  }
}

TEST(Domain, StripsTileTheInterval) {
  for (int q = 4; q <= 12; ++q) {
    const DomainSpec d = build_domain(q, P);
    EXPECT_TRUE(d.strips.front().t_lo == -d.lambda / 2);
    EXPECT_TRUE(d.strips.back().t_hi == d.lambda / 2);
    for (std::size_t i = 1; i < d.strips.size(); ++i) {
      EXPECT_TRUE(d.strips[i - 1].t_hi == d.strips[i].t_lo);
      // Heights increase left to right.
      EXPECT_LT(d.strips[i - 1].height, d.strips[i].height);
    }
  }
}

TEST(Domain, RejectsSmallQ) {
  EXPECT_THROW(build_domain(3, P), InvalidParameter);
  EXPECT_THROW(build_domain(2, P), InvalidParameter);
}

TEST(Domain, MembershipAndDensity) {
  const DomainSpec d = build_domain(8, P);
  const ExtPoint origin{Real(P), Real(P)};
  EXPECT_TRUE(contains(d, origin));
  EXPECT_TRUE(density(d, origin) == d.C);
  const ExtPoint above{Real(0.1, P), Real(1.5, P)};
  EXPECT_FALSE(contains(d, above));
  EXPECT_TRUE(density(d, above).is_zero());
  EXPECT_EQ(strip_at(d, d.lambda), nullptr);
  EXPECT_EQ(strip_at(d, -d.lambda / 2)->index, 1);
}

TEST(Domain, NormalizationByQuadrature) {
  for (int q = 4; q <= 16; ++q) {
    const DomainSpec d = build_domain(q, Precision{128});
    EXPECT_LT(abs(measure_omega(d) - 1).to_double(), 1e-10) << "q=" << q;
    Real total(d.prec);
    for (const Real& m : d.masses) total += m;
    EXPECT_LT(abs(total - 1).to_double(), 1e-30) << "q=" << q;
  }
}

TEST(Domain, MeasureRegionAgreesWithStripMass) {
  const DomainSpec d = build_domain(9, P);
  const Strip& s = d.strips[3];
  const Boundary zero = [](const Real& t) { return Real(t.precision()); };
  const Boundary top = [&s](const Real&) { return s.height; };
  QuadratureOptions o;
  o.abs_tol = 1e-20;
  EXPECT_LT(abs(measure_region(d, s.t_lo, s.t_hi, zero, top, o) - strip_mass(d, s)).to_double(), 1e-18);
}

TEST(Domain, SamplesStayInOmega) {
  const DomainSpec d = build_domain(9, P);
  RandomStream rng(11, 0);
  for (int i = 0; i < 2000; ++i) {
    const ExtPoint p = sample_nu(d, rng);
    ASSERT_TRUE(contains(d, p));
  }
}

TEST(Domain, InverseRoundTrip) {
  for (int q : {4, 5, 8, 9}) {
    const DomainSpec d = build_domain(q, P);
    const BijectivityReport r = audit_bijectivity(d, 2000, 42);
    EXPECT_EQ(r.checked, 2000);
    EXPECT_TRUE(r.failures.empty()) << "q=" << q << ": " << r.failures.front().kind;
  }
}

TEST(Domain, InverseNeedsPositivePast) {
  const DomainSpec d = build_domain(8, P);
  EXPECT_THROW(natural_extension_inverse(d, ExtPoint{Real(0.1, P), Real(P)}), NoPreimage);
}
