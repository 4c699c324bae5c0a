#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rosen/core.hpp"
#include "rosen/errors.hpp"

using namespace rosen;

namespace {

const Precision P{256};

RosenExpansion oracle_expansion(int q) {
  const auto& e = oracle::data()["expansions"][std::to_string(q)];
  RosenExpansion out;
  out.q = q;
  for (const auto& d : e["digits"]) out.digits.push_back({d[0].get<int>(), d[1].get<long>()});
  return out;
}

Real oracle_x(int q) { return oracle::real(oracle::data()["expansions"][std::to_string(q)]["x"], P); }

}  // namespace

TEST(Lambda, MatchesOracle) {
  for (int q = 3; q <= 16; ++q) {
    const Real expected = oracle::real(oracle::data()["lambda"][std::to_string(q)]);
    EXPECT_LT(oracle::rel_diff(lambda(q, P), expected), 1e-45) << "q=" << q;
  }
  EXPECT_TRUE(lambda(3, P) == 1.0);
  EXPECT_THROW(lambda(2, P), InvalidParameter);
}

TEST(RosenStep, DigitAndImage) {
  // q = 3 has lambda = 1: 1/0.3 + 1/2 = 3.83, so r = 3 and f(x) = 1/0.3 - 3.
  const Real x = Real::parse("0.3", P);
  const auto s = rosen_step(x, 3);
  EXPECT_EQ(s.digit.epsilon, 1);
  EXPECT_EQ(s.digit.r, 3);
  EXPECT_LT(abs(s.next - (1 / x - 3)).to_double(), 1e-70);

  const auto n = rosen_step(-x, 3);
  EXPECT_EQ(n.digit.epsilon, -1);
  EXPECT_EQ(n.digit.r, 3);
}

TEST(RosenStep, ImageStaysInFundamentalInterval) {
  for (int q : {3, 4, 5, 8, 9, 12}) {
    const Real lam = lambda(q, P);
    Real x = Real::pi(P) / 10 * lam - lam / 5;
    for (int i = 0; i < 200; ++i) {
      x = rosen_step(x, lam).next;
      EXPECT_GE(x, -lam / 2) << "q=" << q;
      EXPECT_LT(x, lam / 2) << "q=" << q;
    }
  }
}

TEST(RosenStep, TerminatesAtZeroAndResolvesTies) {
  EXPECT_THROW(rosen_step(Real(P), 8), GqRationalTermination);
  // x = 2/(3 lambda) puts 1/(lambda x) + 1/2 exactly on 2.
  const Real lam = lambda(8, P);
  const Real tie = Real(2L, P) / (3 * lam);
  EXPECT_THROW(rosen_step(tie, lam, TiePolicy::strict), BoundaryAmbiguity);
  const auto s = rosen_step(tie, lam, TiePolicy::half_open);
  EXPECT_EQ(s.digit.r, 2);
  EXPECT_LT(abs(s.next + lam / 2).to_double(), 1e-60);
  EXPECT_GE(s.next, -lam / 2);
}

TEST(Expand, MatchesOracleDigits) {
  for (int q : {3, 8, 9}) {
    const RosenExpansion want = oracle_expansion(q);
    const RosenExpansion got = expand(oracle_x(q), q, static_cast<long>(want.digits.size()), P);
    ASSERT_EQ(got.digits.size(), want.digits.size()) << "q=" << q;
    EXPECT_EQ(got.digits, want.digits) << "q=" << q;
    EXPECT_FALSE(got.terminated);
    EXPECT_TRUE(got.tail.has_value());
  }
}

TEST(Expand, GqRationalTerminates) {
  // 1/(2 lambda) = [1:2] exactly.
  const Real lam = lambda(8, P);
  const RosenExpansion e = expand(1 / (2 * lam), 8, 10, P);
  EXPECT_TRUE(e.terminated);
  ASSERT_EQ(e.digits.size(), 1U);
  EXPECT_EQ(e.digits[0], (RosenDigit{1, 2}));
}

TEST(Evaluate, InvertsExpand) {
  for (int q : {3, 5, 8, 9, 11}) {
    const Real lam = lambda(q, P);
    const Real x = (sqrt(Real(7L, P)) - 2) * lam - lam / 2;
    const RosenExpansion e = expand(x, q, 60, P);
    EXPECT_LT(abs(evaluate(e, P) - x).to_double(), 1e-70) << "q=" << q;
  }
}

TEST(Evaluate, RejectsVanishingDenominator) {
  RosenExpansion e;
  e.q = 3;
  e.digits = {{1, 1}};
  e.tail = Real(-1L, P);
  EXPECT_THROW(evaluate(e, P), IllFormedExpansion);
}

TEST(Convergents, MatchOracle) {
  for (int q : {3, 8, 9}) {
    const auto& e = oracle::data()["expansions"][std::to_string(q)];
    const auto conv = convergents(oracle_expansion(q), P);
    for (std::size_t n = 0; n < e["convergents"].size(); ++n) {
      EXPECT_LT(oracle::rel_diff(conv[n].numerator, oracle::real(e["convergents"][n][0])), 1e-40);
      EXPECT_LT(oracle::rel_diff(conv[n].denominator, oracle::real(e["convergents"][n][1])), 1e-40);
      EXPECT_EQ(conv[n].index, static_cast<int>(n + 1));
    }
  }
}

TEST(Convergents, DeterminantIdentity) {
  // R_{n-1} S_n - R_n S_{n-1} is a product of signs.
  const auto conv = convergents(oracle_expansion(8), P);
  for (std::size_t n = 1; n < conv.size(); ++n) {
    const Real det = conv[n - 1].numerator * conv[n].denominator - conv[n].numerator * conv[n - 1].denominator;
    EXPECT_LT(abs(abs(det) - 1).to_double(), 1e-50);
  }
}

TEST(Theta, DirectMatchesOracle) {
  for (int q : {3, 8, 9}) {
    const auto& e = oracle::data()["expansions"][std::to_string(q)];
    const Real x = oracle_x(q);
    const auto conv = convergents(oracle_expansion(q), P);
    for (std::size_t n = 0; n < e["theta"].size(); ++n) {
      EXPECT_LT(oracle::rel_diff(theta_direct(x, conv[n]), oracle::real(e["theta"][n])), 1e-35)
          << "q=" << q << " n=" << n + 1;
    }
  }
}

TEST(Theta, NaturalExtensionFormulaAgreesWithDirect) {
  for (int q : {3, 8, 9}) {
    const Real lam = lambda(q, P);
    const Real x = oracle_x(q);
    const RosenExpansion e = expand(x, q, 51, P);
    const auto conv = convergents(e, P);
    ExtPoint p{x, Real(P)};
    for (std::size_t n = 1; n + 1 < e.digits.size(); ++n) {
      p = natural_extension_step(p, lam).point;
      // At (t_n, v_n): Theta_{n-1}, Theta_n, and Theta_{n+1} from the next digit.
      const auto [prev, cur] = theta_from_tv(p, e.digits[n].epsilon);
      const Real prev_direct = n == 1 ? abs(x) : theta_direct(x, conv[n - 2]);
      EXPECT_LT(abs(prev - prev_direct).to_double(), 1e-18);
      EXPECT_LT(abs(cur - theta_direct(x, conv[n - 1])).to_double(), 1e-18);
      const Real next = theta_next(p, e.digits[n], e.digits[n + 1].epsilon, lam);
      EXPECT_LT(abs(next - theta_direct(x, conv[n])).to_double(), 1e-18);
    }
  }
}

TEST(NaturalExtension, PastFromDigits) {
  const int q = 8;
  const Real lam = lambda(q, P);
  const Real x = oracle_x(q);
  const RosenExpansion e = expand(x, q, 30, P);
  ExtPoint p{x, Real(P)};
  for (std::size_t n = 1; n <= 30; ++n) {
    p = natural_extension_step(p, lam).point;
    EXPECT_LT(abs(p.v - past_from_digits(e.digits, n, lam)).to_double(), 1e-60) << n;
  }
}

TEST(NaturalExtension, ThetaRejectsNonPositiveDenominator) {
  const ExtPoint bad{Real(-2L, P), Real(1L, P)};
  EXPECT_THROW(theta_from_tv(bad, 1), OutsideDomain);
}
