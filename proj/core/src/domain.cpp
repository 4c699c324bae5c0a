#include "rosen/domain.hpp"

#include <algorithm>
#include <string>

#include "rosen/errors.hpp"

namespace rosen {

namespace {

constexpr long kMaxSweeps = 10000;

void require_q(int q) {
  if (q < 4) {
    throw InvalidParameter("the natural-extension domain needs q >= 4, got q=" + std::to_string(q));
  }
}

Real odd_R(const Real& lam) {
  // Positive root of R^2 + (2 - lambda) R - 1 = 0.
  const Real b = 2 - lam;
  return (sqrt(b * b + 4) - b) / 2;
}

// One Gauss-Seidel pass over the relation cycle; returns the largest change.
Real sweep_even(std::vector<Real>& L, Real& R, const Real& lam) {
  const std::size_t n = L.size();
  Real delta(lam.precision());
  auto update = [&delta](Real& slot, Real value) {
    delta = max(delta, abs(value - slot));
    slot = std::move(value);
  };
  update(R, lam - L[n - 1]);
  update(L[0], 1 / (lam + R));
  for (std::size_t j = 1; j < n; ++j) update(L[j], 1 / (lam - L[j - 1]));
  return delta;
}

Real sweep_odd(std::vector<Real>& L, const Real& lam) {
  const std::size_t n = L.size();  // 2h + 1
  Real delta(lam.precision());
  auto update = [&delta](Real& slot, Real value) {
    delta = max(delta, abs(value - slot));
    slot = std::move(value);
  };
  update(L[0], 1 / (2 * lam - L[n - 2]));
  update(L[1], 1 / (2 * lam - L[n - 1]));
  for (std::size_t j = 2; j < n; ++j) update(L[j], 1 / (lam - L[j - 2]));
  return delta;
}

}  // namespace

HeightSolution solve_heights(int q, Precision prec) {
  require_q(q);
  const Real lam = lambda(q, prec);
  const bool even = q % 2 == 0;
  const std::size_t n = even ? static_cast<std::size_t>(q / 2 - 1) : static_cast<std::size_t>(q - 2);
  HeightSolution out;
  out.L.assign(n, 1 / lam);
  out.R = even ? 1 / lam : odd_R(lam);
  const Real tol = exp2i(-(prec.bits - 8), prec);
  for (long s = 1; s <= kMaxSweeps; ++s) {
    Real delta = even ? sweep_even(out.L, out.R, lam) : sweep_odd(out.L, lam);
    if (delta < tol) {
      out.sweeps = s;
      return out;
    }
  }
  throw DomainConstructionFailure("height relations did not converge for q=" + std::to_string(q));
}

std::vector<Real> relation_residuals(int q, const std::vector<Real>& L, const Real& R,
                                     const Real& lam) {
  std::vector<Real> res;
  const std::size_t n = L.size();
  if (q % 2 == 0) {
    res.push_back(abs(R - (lam - L[n - 1])));
    res.push_back(abs(L[0] - 1 / (lam + R)));
    for (std::size_t j = 1; j < n; ++j) res.push_back(abs(L[j] - 1 / (lam - L[j - 1])));
    res.push_back(abs(R - 1 / (lam - L[n - 1])));
  } else {
    res.push_back(abs(R - (lam - L[n - 1])));
    res.push_back(abs(L[0] - 1 / (2 * lam - L[n - 2])));
    res.push_back(abs(L[1] - 1 / (2 * lam - L[n - 1])));
    for (std::size_t j = 2; j < n; ++j) res.push_back(abs(L[j] - 1 / (lam - L[j - 2])));
    res.push_back(abs(R - 1 / (lam - L[n - 2])));
  }
  return res;
}

DomainSpec build_domain(int q, Precision prec) {
  require_q(q);
  DomainSpec d;
  d.q = q;
  d.prec = prec;
  d.lambda = lambda(q, prec);
  d.parity = q % 2 == 0 ? Parity::even : Parity::odd;
  const Real& lam = d.lambda;

  auto heights = solve_heights(q, prec);
  d.L = std::move(heights.L);
  d.R = std::move(heights.R);

  // phi orbit; the last point is the G_q-rational 0.
  const int last = d.parity == Parity::even ? q / 2 - 1 : q - 2;
  d.phi.push_back(-lam / 2);
  for (int j = 1; j <= last; ++j) {
    const Real& prev = d.phi.back();
    if (abs(prev) < zero_threshold(prec)) {
      throw DomainConstructionFailure("phi orbit reached 0 early at j=" + std::to_string(j));
    }
    d.phi.push_back(rosen_step(prev, lam, TiePolicy::strict).next);
  }
  if (abs(d.phi.back()) > zero_threshold(prec)) {
    throw DomainConstructionFailure("phi orbit does not end at 0 for q=" + std::to_string(q));
  }
  d.phi.back() = Real(prec);

  auto phi = [&d](int j) -> const Real& { return d.phi.at(static_cast<std::size_t>(j)); };
  if (d.parity == Parity::even) {
    d.p = q / 2;
    d.round_length = d.p - 1;
    for (int j = 1; j <= d.p - 1; ++j) d.strips.push_back({j, phi(j - 1), phi(j), d.L_at(j)});
    d.strips.push_back({d.p, Real(prec), lam / 2, d.R});
    // 1 / log[(1 + cos(pi/q)) / sin(pi/q)]
    const Real a = Real::pi(prec) / q;
    d.C = 1 / log((1 + cos(a)) / sin(a));
  } else {
    d.h = (q - 3) / 2;
    d.round_length = 2 * d.h + 1;
    for (int j = 1; j <= 2 * d.h + 1; ++j) {
      const int k = j / 2;
      if (j % 2 == 0) {
        d.strips.push_back({j, phi(d.h + k), phi(k), d.L_at(j)});
      } else {
        d.strips.push_back({j, phi(k), phi(d.h + k + 1), d.L_at(j)});
      }
    }
    d.strips.push_back({2 * d.h + 2, Real(prec), lam / 2, d.R});
    // The staircase integrates 1/(1+tv)^2 to log[(1+R) / (2 sin(pi/2q))];
    // 1/log(1+R) alone does not give a probability measure.
    const Real a = Real::pi(prec) / (2 * q);
    d.C = 1 / log((1 + d.R) / (2 * sin(a)));
  }

  for (std::size_t i = 0; i < d.strips.size(); ++i) {
    const Strip& s = d.strips[i];
    const bool ordered = s.t_lo < s.t_hi;
    const bool adjacent = i == 0 || d.strips[i - 1].t_hi == s.t_lo;
    if (!ordered || !adjacent) {
      throw DomainConstructionFailure("strips of q=" + std::to_string(q) +
                                      " do not tile [-lambda/2, lambda/2)");
    }
  }
  for (const Strip& s : d.strips) d.masses.push_back(strip_mass(d, s));
  return d;
}

const Strip* strip_at(const DomainSpec& d, const Real& t) {
  if (t < d.strips.front().t_lo || !(t < d.strips.back().t_hi)) return nullptr;
  auto it = std::upper_bound(d.strips.begin(), d.strips.end(), t,
                             [](const Real& x, const Strip& s) { return x < s.t_lo; });
  return &*(it - 1);
}

bool contains(const DomainSpec& d, const ExtPoint& p) {
  const Strip* s = strip_at(d, p.t);
  return s != nullptr && p.v.sign() >= 0 && p.v <= s->height;
}

Real density(const DomainSpec& d, const ExtPoint& p) {
  if (!contains(d, p)) return Real(d.prec);
  Real den = 1 + p.t * p.v;
  return d.C / (den * den);
}

Real strip_mass(const DomainSpec& d, const Strip& s) {
  return d.C * log((1 + s.t_hi * s.height) / (1 + s.t_lo * s.height));
}

Real measure_region(const DomainSpec& d, const Real& t_lo, const Real& t_hi, const Boundary& v_lo,
                    const Boundary& v_hi, const QuadratureOptions& opts) {
  Real a = max(t_lo, d.strips.front().t_lo);
  Real b = min(t_hi, d.strips.back().t_hi);
  Real total(d.prec);
  if (!(a < b)) return total;

  // Inner integral: int_{lo}^{hi} dv / (1+tv)^2 = (hi - lo) / ((1+t lo)(1+t hi)).
  auto inner = [&](const Strip& s) {
    return [&d, &s, &v_lo, &v_hi](const Real& t) {
      Real lo = max(v_lo(t), Real(d.prec));
      Real hi = min(v_hi(t), s.height);
      if (!(lo < hi)) return Real(d.prec);
      return (hi - lo) / ((1 + t * lo) * (1 + t * hi));
    };
  };

  std::vector<const Strip*> pieces;
  for (const Strip& s : d.strips) {
    if (s.t_hi > a && s.t_lo < b) pieces.push_back(&s);
  }
  QuadratureOptions piece_opts = opts;
  piece_opts.abs_tol = opts.abs_tol / static_cast<double>(pieces.size());
  for (const Strip* s : pieces) {
    Real lo = max(a, s->t_lo);
    Real hi = min(b, s->t_hi);
    if (!(lo < hi)) continue;
    total += integrate(inner(*s), lo, hi, piece_opts).value;
  }
  return d.C * total;
}

Real measure_omega(const DomainSpec& d, const QuadratureOptions& opts) {
  const Boundary zero = [&d](const Real&) { return Real(d.prec); };
  // measure_region clips to each strip height, so any upper bound above all
  // heights works and avoids a jump at the strip edges.
  const Boundary top = [&d](const Real&) { return d.lambda; };
  return measure_region(d, d.strips.front().t_lo, d.strips.back().t_hi, zero, top, opts);
}

ExtPoint sample_nu(const DomainSpec& d, RandomStream& rng) {
  // Strip by cumulative mass.
  const std::vector<Real>& masses = d.masses;
  Real total(d.prec);
  for (const Real& m : masses) total += m;
  Real u = rng.uniform_real(d.prec) * total;
  std::size_t idx = 0;
  while (idx + 1 < masses.size() && !(u < masses[idx])) {
    u -= masses[idx];
    ++idx;
  }
  const Strip& s = d.strips[idx];
  const Real& L = s.height;

  // t-marginal is proportional to L/(1+tL).
  const Real base = 1 + s.t_lo * L;
  const Real span = log((1 + s.t_hi * L) / base);
  Real t = (base * exp(rng.uniform_real(d.prec) * span) - 1) / L;
  if (t < s.t_lo) t = s.t_lo;
  if (!(t < s.t_hi)) t = s.t_lo;  // rounding at the open end; measure zero

  // Given t, v/(1+tv) is uniform on [0, L/(1+tL)].
  Real w = rng.uniform_real(d.prec) * L / (1 + t * L);
  Real v = w / (1 - t * w);
  if (v > L) v = L;
  return {std::move(t), std::move(v)};
}

InverseStep natural_extension_inverse(const DomainSpec& d, const ExtPoint& p) {
  const Real& lam = d.lambda;
  if (!(p.v.sign() > 0)) {
    throw NoPreimage("v must be positive to invert T at (" + p.t.to_string(20) + ", " +
                     p.v.to_string(20) + ")");
  }
  // v' = 1/(r lambda + eps v) with 0 <= v <= R < lambda bounds r near 1/(lambda v').
  const Real inv_v = 1 / p.v;
  const long r_mid = (inv_v / lam).floor_long();
  std::vector<InverseStep> found;
  for (long r = std::max(1L, r_mid - 1); r <= r_mid + 2; ++r) {
    for (int eps : {-1, 1}) {
      Real den = p.t + r * lam;
      if (!(den.sign() > 0)) continue;
      ExtPoint pre{eps / den, eps * (inv_v - r * lam)};
      if (!contains(d, pre)) continue;
      if (abs(pre.t) < zero_threshold(d.prec)) continue;
      const auto step = rosen_step(pre.t, lam, TiePolicy::half_open);
      if (step.digit != RosenDigit{eps, r}) continue;
      found.push_back({RosenDigit{eps, r}, std::move(pre)});
    }
  }
  if (found.empty()) {
    throw NoPreimage("no preimage in Omega for (" + p.t.to_string(20) + ", " + p.v.to_string(20) +
                     ")");
  }
  if (found.size() > 1) {
    throw AmbiguousPreimage("several preimages in Omega for (" + p.t.to_string(20) + ", " +
                            p.v.to_string(20) + ")");
  }
  return std::move(found.front());
}

BijectivityReport audit_points(const DomainSpec& d, const std::vector<ExtPoint>& points) {
  BijectivityReport report;
  const Real tol = exp2i(-d.prec.bits / 4, d.prec);
  auto close = [&tol](const Real& a, const Real& b) {
    return abs(a - b) <= tol * max(Real(1, a.precision()), abs(a));
  };
  for (const ExtPoint& pt : points) {
    ++report.checked;
    if (!contains(d, pt)) {
      report.failures.push_back({pt, "NoPreimage: point outside Omega"});
      continue;
    }
    try {
      auto fwd = natural_extension_step(pt, d.lambda);
      if (!contains(d, fwd.point)) {
        report.failures.push_back({pt, "image outside Omega"});
        continue;
      }
      auto back = natural_extension_inverse(d, fwd.point);
      if (!close(back.point.t, pt.t) || !close(back.point.v, pt.v) || back.digit != fwd.digit) {
        report.failures.push_back({pt, "inverse mismatch"});
      }
    } catch (const NoPreimage& e) {
      report.failures.push_back({pt, std::string("NoPreimage: ") + e.what()});
    } catch (const AmbiguousPreimage& e) {
      report.failures.push_back({pt, std::string("AmbiguousPreimage: ") + e.what()});
    } catch (const GqRationalTermination& e) {
      report.failures.push_back({pt, std::string("GqRationalTermination: ") + e.what()});
    }
  }
  return report;
}

BijectivityReport audit_bijectivity(const DomainSpec& d, long n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw InvalidParameter("audit needs at least one sample");
  RandomStream rng(seed, 0);
  std::vector<ExtPoint> points;
  points.reserve(static_cast<std::size_t>(n_samples));
  for (long i = 0; i < n_samples; ++i) points.push_back(sample_nu(d, rng));
  return audit_points(d, points);
}

}  // namespace rosen
