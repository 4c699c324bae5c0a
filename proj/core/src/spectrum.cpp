#include "rosen/spectrum.hpp"

#include <string>

#include "rosen/errors.hpp"

namespace rosen {

namespace {

constexpr int kMaxFixedPointIterations = 10000;

bool is_even(const DomainSpec& d) { return d.parity == Parity::even; }

void require_k(int k, int min_k) {
  if (k < min_k) {
    throw InvalidParameter("k must be >= " + std::to_string(min_k) + ", got " + std::to_string(k));
  }
}

}  // namespace

std::string to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::OutsideD: return "OutsideD";
    case RegionLabel::D1: return "D1";
    case RegionLabel::D2: return "D2";
    case RegionLabel::D3: return "D3";
    case RegionLabel::D4: return "D4";
    case RegionLabel::A: return "A";
    case RegionLabel::B: return "B";
    case RegionLabel::C1: return "C1";
    case RegionLabel::C2: return "C2";
  }
  return "?";
}

RegionLabel component(const DomainSpec& d, RegionLabel label) {
  switch (label) {
    case RegionLabel::A:
    case RegionLabel::B:
    case RegionLabel::C1:
    case RegionLabel::C2:
      return is_even(d) ? RegionLabel::D2 : RegionLabel::D3;
    default:
      return label;
  }
}

Real hurwitz_constant(int q, Precision prec) {
  if (q % 2 == 0) {
    if (q < 4) throw InvalidParameter("q must be >= 3");
    return Real(0.5, prec);
  }
  const Real lam = lambda(q, prec);
  const Real a = 1 - lam / 2;
  return 1 / (2 * sqrt(a * a + 1));
}

DCurves d_boundaries(int q, Precision prec) {
  if (q < 4) throw InvalidParameter("d_boundaries needs q >= 4");
  return DCurves{hurwitz_constant(q, prec)};
}

Real curve_h(const Real& t, const Real& lam) {
  return (2 * lam * lam * t + 2 * lam + 1) / (2 * lam * t - t + 2);
}

Real curve_l(const Real& t, const Real& lam) {
  return (2 * lam * lam * t + 2 * lam - 1) / (2 * lam * t + t + 2);
}

RegionA region_a(const DomainSpec& d) {
  const Precision prec = d.prec;
  DCurves curves = d_boundaries(d.q, prec);
  Real top = is_even(d) ? d.L_at(d.p - 1) : d.L_at(2 * d.h);
  Real t_end = -1 / (top + 1 / curves.H);
  Real tau0 = Real(-2, prec) / (3 * d.lambda);
  return RegionA{std::move(tau0), std::move(t_end), std::move(top), std::move(curves)};
}

bool in_region_a(const DomainSpec& d, const ExtPoint& p) {
  const RegionA a = region_a(d);
  return p.t >= a.tau0 && p.t <= a.t_end && p.v >= a.lower(p.t) && p.v <= a.top;
}

RegionLabel classify(const DomainSpec& d, const ExtPoint& p) {
  if (!contains(d, p)) {
    throw OutsideOmega("(" + p.t.to_string(20) + ", " + p.v.to_string(20) + ") is not in Omega");
  }
  const Real H = hurwitz_constant(d.q, d.prec);
  const Real den = 1 + p.t * p.v;
  if (min(p.v / den, abs(p.t) / den) <= H) return RegionLabel::OutsideD;

  const Real& lam = d.lambda;
  const bool q5 = d.q == 5;
  if (is_even(d)) {
    if (d.p >= 3 && p.t < d.phi[1]) return RegionLabel::D1;
  } else if (!q5) {
    const int j = strip_at(d, p.t)->index;
    if (j == 1) return RegionLabel::D1;
    if (j == 2) return RegionLabel::D2;
    if (p.t >= d.phi[static_cast<std::size_t>(d.h)]) return RegionLabel::D4;
  }
  if (p.t < -1 / lam) {
    // Table row r = 1, eps = -1, eps' = -1.
    const Real theta_next = (1 + p.t * lam) * (p.v - lam) / den;
    return theta_next > H ? RegionLabel::C1 : RegionLabel::C2;
  }
  const RegionA a = region_a(d);
  if (p.t < a.tau0) return RegionLabel::B;
  if (in_region_a(d, p)) return RegionLabel::A;
  return is_even(d) ? RegionLabel::D2 : RegionLabel::D3;
}

std::vector<RosenDigit> round_block(const DomainSpec& d) {
  std::vector<RosenDigit> block;
  const RosenDigit two{-1, 2};
  const RosenDigit one{-1, 1};
  if (is_even(d)) {
    block.push_back(two);
    block.insert(block.end(), static_cast<std::size_t>(d.p - 2), one);
  } else {
    block.push_back(two);
    block.insert(block.end(), static_cast<std::size_t>(d.h), one);
    block.push_back(two);
    block.insert(block.end(), static_cast<std::size_t>(d.h - 1), one);
  }
  return block;
}

Real tau(const DomainSpec& d, int k) {
  require_k(k, 0);
  const auto block = round_block(d);
  RosenExpansion e;
  e.q = d.q;
  for (int i = 0; i < k; ++i) e.digits.insert(e.digits.end(), block.begin(), block.end());
  e.tail = Real(-2, d.prec) / (3 * d.lambda);
  return evaluate(e, d.prec);
}

long block_length(const DomainSpec& d, int k) {
  return static_cast<long>(k) * d.round_length + 2;
}

Real tong_constant(const DomainSpec& d, int k) {
  require_k(k, 1);
  const Real t = tau(d, k - 1);
  return -t / (1 + region_a(d).top * t);
}

Real tong_constant_printed_odd(const DomainSpec& d, int k) {
  require_k(k, 1);
  const Real t = tau(d, k - 1);
  return -t / (1 + (d.lambda - d.R) * t);
}

Real classical_tong_constant(int k, Precision prec) {
  require_k(k, 1);
  const Real s5 = sqrt(Real(5, prec));
  const Real ratio = (3 - s5) / 2;
  return 1 / s5 + pow(ratio, 2L * k + 3) / s5;
}

Real nu_Ak_closed(const DomainSpec& d, int k) {
  const Real t = tau(d, k);
  const Real& lam = d.lambda;
  if (is_even(d)) {
    const Real rational = ((-lam - 1) * t - 1) / (2 * t);
    const Real logarithm = log(abs(2 * t / ((lam - 1) * t + 1)));
    return d.C * (rational + logarithm);
  }
  // The printed odd formula, read with C = H_q and D = C_q.
  const Real& R = d.R;
  const Real H = hurwitz_constant(d.q, d.prec);
  const Real first = log(R + 1 / R);
  const Real second = log(abs((1 + t * (lam - 1 / R)) / t));
  return d.C * (first - second - H * (lam + R) - H / t);
}

Real nu_Ak_quadrature(const DomainSpec& d, int k, double rel_tol) {
  const RegionA a = region_a(d);
  const Real t_lo = tau(d, k);
  const Boundary lower = [&a](const Real& t) { return a.lower(t); };
  const Boundary upper = [&a](const Real&) { return a.top; };
  QuadratureOptions opts;
  opts.abs_tol = 0;
  opts.rel_tol = rel_tol;
  return measure_region(d, t_lo, a.t_end, lower, upper, opts);
}

Real nu_Ak(const DomainSpec& d, int k) {
  return is_even(d) && d.q >= 6 ? nu_Ak_closed(d, k) : nu_Ak_quadrature(d, k);
}

FixedPointSet fixed_points(const DomainSpec& d) {
  const Precision prec = d.prec;
  const auto block = round_block(d);
  const Real tol = exp2i(-(prec.bits - 8), prec);
  const RegionA a = region_a(d);

  // t: tau_k converges to the fixed point of t -> [block ; tail = t].
  RosenExpansion e;
  e.q = d.q;
  e.digits = block;
  Real t = a.tau0;
  bool converged = false;
  for (int i = 0; i < kMaxFixedPointIterations && !converged; ++i) {
    e.tail = t;
    Real next = evaluate(e, prec);
    converged = abs(next - t) < tol;
    t = std::move(next);
  }
  if (!converged) throw FixedPointFailure("tau_k iteration did not settle for q=" + std::to_string(d.q));

  // v: the round's v-map is a contraction; iterate it forward.
  Real v = a.top;
  converged = false;
  for (int i = 0; i < kMaxFixedPointIterations && !converged; ++i) {
    Real next = v;
    for (const RosenDigit& dg : block) next = 1 / (dg.r * d.lambda + dg.epsilon * next);
    converged = abs(next - v) < tol;
    v = std::move(next);
  }
  if (!converged) throw FixedPointFailure("v-map iteration did not settle for q=" + std::to_string(d.q));

  FixedPointSet out{ExtPoint{t, v}, {}, Real(prec)};
  ExtPoint p = out.seed;
  for (int i = 0; i < d.round_length; ++i) {
    out.orbit.push_back(p);
    p = natural_extension_step(p, d.lambda).point;
  }
  out.residual = max(abs(p.t - out.seed.t), abs(p.v - out.seed.v));
  return out;
}

SpectrumTable spectrum_table(int q, int k_max, Precision prec) {
  require_k(k_max, 0);
  SpectrumTable table;
  table.q = q;
  table.hurwitz = hurwitz_constant(q, prec);
  if (q == 3) {
    for (int k = 1; k <= k_max; ++k) {
      SpectrumRow row;
      row.k = k;
      row.block_len = k + 2;
      row.c = classical_tong_constant(k, prec);
      table.rows.push_back(std::move(row));
    }
    return table;
  }
  const DomainSpec d = build_domain(q, prec);
  table.tau_limit = fixed_points(d).seed.t;
  for (int k = 0; k <= k_max; ++k) {
    SpectrumRow row;
    row.k = k;
    row.block_len = block_length(d, k);
    row.tau = tau(d, k);
    row.c = tong_constant(d, k + 1);
    row.nu = nu_Ak(d, k);
    if (!is_even(d)) row.nu_closed = nu_Ak_closed(d, k);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace rosen
