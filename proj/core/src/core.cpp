#include "rosen/core.hpp"

#include <algorithm>
#include <string>

#include "rosen/errors.hpp"

namespace rosen {

Real lambda(int q, Precision prec) {
  if (q < 3) {
    throw InvalidParameter("lambda_q requires q >= 3, got q=" + std::to_string(q));
  }
  // Exact values where 2 cos(pi/q) is a (square root of an) integer.
  switch (q) {
    case 3: return Real(1L, prec);
    case 4: return sqrt(Real(2L, prec));
    case 6: return sqrt(Real(3L, prec));
    default: return 2 * cos(Real::pi(prec) / q);
  }
}

StepResult rosen_step(const Real& x, int q, TiePolicy ties) {
  return rosen_step(x, lambda(q, x.precision()), ties);
}

StepResult rosen_step(const Real& x, const Real& lam, TiePolicy ties) {
  const Precision prec{std::max(x.precision().bits, lam.precision().bits)};
  const Real threshold = zero_threshold(prec);
  if (abs(x) < threshold) {
    throw GqRationalTermination("f_q reached 0: x = " + x.to_string(20));
  }
  const int eps = x.sign();
  const Real inv = 1 / abs(x).with_precision(prec);
  const Real s = inv / lam + Real(0.5, prec);
  long r = s.floor_long();
  const Real frac = s - r;

  bool tie = false;
  if (frac < threshold) {
    tie = true;
  } else if (1 - frac < threshold) {
    tie = true;
    r += 1;
  }
  if (tie && ties == TiePolicy::strict) {
    throw BoundaryAmbiguity("digit tie at x = " + x.to_string(30), -1);
  }
  if (r < 1) {
    throw InvalidParameter("x = " + x.to_string(20) + " lies outside [-lambda/2, lambda/2)");
  }

  Real next = inv - r * lam;
  if (tie) {
    // The exact tie lands on the closed end of [-lambda/2, lambda/2).
    const Real left = -lam / 2;
    if (next < left) next = left;
  }
  return {RosenDigit{eps, r}, std::move(next)};
}

RosenExpansion expand(const Real& x, int q, long n_max, Precision prec, TiePolicy ties) {
  const Real lam = lambda(q, prec);
  const Real threshold = zero_threshold(prec);
  RosenExpansion out;
  out.q = q;
  Real t = x.with_precision(prec);
  for (long i = 0; i < n_max; ++i) {
    if (abs(t) < threshold) {
      out.terminated = true;
      return out;
    }
    try {
      auto [digit, next] = rosen_step(t, lam, ties);
      out.digits.push_back(digit);
      t = std::move(next);
    } catch (const BoundaryAmbiguity& e) {
      throw BoundaryAmbiguity("digit tie at step " + std::to_string(i) + ": " + e.what(), i);
    }
  }
  if (abs(t) < threshold) {
    out.terminated = true;
  } else {
    out.tail = std::move(t);
  }
  return out;
}

Real evaluate(const RosenExpansion& expansion, Precision prec) {
  const Real lam = lambda(expansion.q, prec);
  const Real threshold = zero_threshold(prec);
  Real acc = expansion.tail ? expansion.tail->with_precision(prec) : Real(prec);
  for (auto it = expansion.digits.rbegin(); it != expansion.digits.rend(); ++it) {
    Real den = it->r * lam + acc;
    if (abs(den) < threshold) {
      throw IllFormedExpansion("vanishing partial denominator while evaluating");
    }
    acc = it->epsilon / den;
  }
  return acc;
}

std::vector<Convergent> convergents(const RosenExpansion& expansion, Precision prec) {
  const Real lam = lambda(expansion.q, prec);
  std::vector<Convergent> out;
  out.reserve(expansion.digits.size());
  Real r_prev(1, prec);  // R_{-1}
  Real r_cur(0, prec);   // R_0
  Real s_prev(0, prec);  // S_{-1}
  Real s_cur(1, prec);   // S_0
  int n = 0;
  for (const auto& d : expansion.digits) {
    const Real a = d.r * lam;
    Real r_next = a * r_cur + d.epsilon * r_prev;
    Real s_next = a * s_cur + d.epsilon * s_prev;
    r_prev = std::move(r_cur);
    s_prev = std::move(s_cur);
    r_cur = std::move(r_next);
    s_cur = std::move(s_next);
    out.push_back(Convergent{r_cur, s_cur, ++n});
  }
  return out;
}

Real theta_direct(const Real& x, const Convergent& c) {
  return c.denominator * c.denominator * abs(x - c.numerator / c.denominator);
}

NaturalExtensionStep natural_extension_step(const ExtPoint& p, int q, TiePolicy ties) {
  return natural_extension_step(p, lambda(q, p.t.precision()), ties);
}

NaturalExtensionStep natural_extension_step(const ExtPoint& p, const Real& lam, TiePolicy ties) {
  auto [digit, next_t] = rosen_step(p.t, lam, ties);
  Real next_v = 1 / (digit.r * lam + digit.epsilon * p.v);
  return {digit, ExtPoint{std::move(next_t), std::move(next_v)}};
}

std::pair<Real, Real> theta_from_tv(const ExtPoint& p, int eps_next) {
  Real den = 1 + p.t * p.v;
  if (den.sign() <= 0) {
    throw OutsideDomain("1 + t v <= 0 at (" + p.t.to_string(20) + ", " + p.v.to_string(20) + ")");
  }
  return {p.v / den, eps_next * p.t / den};
}

Real theta_next(const ExtPoint& p, const RosenDigit& d, int eps_next2, const Real& lam) {
  Real den = 1 + p.t * p.v;
  if (den.sign() <= 0) {
    throw OutsideDomain("1 + t v <= 0 at (" + p.t.to_string(20) + ", " + p.v.to_string(20) + ")");
  }
  Real a = 1 - d.epsilon * d.r * p.t * lam;
  Real b = d.r * lam + d.epsilon * p.v;
  return eps_next2 * a * b / den;
}

Real past_from_digits(const std::vector<RosenDigit>& digits, std::size_t n, const Real& lam) {
  if (n > digits.size()) {
    throw InvalidParameter("past index beyond the digit list");
  }
  Real acc(lam.precision());
  if (n == 0) return acc;
  // [1:r_n, e_n:r_{n-1}, ..., e_2:r_1], innermost term first.
  for (std::size_t k = 1; k <= n; ++k) {
    const int numerator = (k == n) ? 1 : digits[k].epsilon;
    acc = numerator / (digits[k - 1].r * lam + acc);
  }
  return acc;
}

}  // namespace rosen
