#pragma once

// Region D of consecutive large approximation coefficients, its subregions,
// the flushing thresholds tau_k, Tong constants c_k, measures of A_k and the
// fixed-point set of one round.

#include <optional>
#include <string>
#include <vector>

#include "rosen/core.hpp"
#include "rosen/domain.hpp"
#include "rosen/quadrature.hpp"
#include "rosen/real.hpp"

namespace rosen {

enum class RegionLabel { OutsideD, D1, D2, D3, D4, A, B, C1, C2 };

std::string to_string(RegionLabel label);

/// Connected component of D holding a label: D1 for D1; A, B, C1, C2 sit in
/// D2 (even q) or D3 (odd q). Single-component q=5 reports D3 throughout.
RegionLabel component(const DomainSpec& d, RegionLabel label);

/// 1/2 for even q, 1/(2 sqrt((1 - lambda/2)^2 + 1)) for odd q.
Real hurwitz_constant(int q, Precision prec);

/// Boundary curves of D: v = f(t) is Theta_{n-1} = H, v = g(t) is
/// |t|/(1+tv) = H.
struct DCurves {
  Real H;
  Real f(const Real& t) const { return H / (1 - H * t); }
  Real g(const Real& t) const { return (abs(t) - H) / (H * t); }
};
DCurves d_boundaries(int q, Precision prec);

/// Theta_{n+1} = 1/2 on region C (even q).
Real curve_h(const Real& t, const Real& lambda);
/// Companion curve bounding B (even q).
Real curve_l(const Real& t, const Real& lambda);

/// Subregion label of p in D. Throws OutsideOmega when p is not in Omega.
RegionLabel classify(const DomainSpec& d, const ExtPoint& p);

/// Region A = {tau_0 <= t <= t_end, max(f, g)(t) <= v <= top}. For q >= 6
/// even and q >= 7 odd the lower edge is g alone; at q = 4, 5 the curve f
/// cuts through the box.
struct RegionA {
  Real tau0;   ///< -2/(3 lambda)
  Real t_end;  ///< -1/(top + 1/H): -1/(lambda+1) even, -1/(lambda + R) odd
  Real top;    ///< L_{p-1} = lambda - 1 even, L_{2h} = lambda - 1/R odd
  DCurves curves;

  Real lower(const Real& t) const { return max(curves.f(t), curves.g(t)); }
};
RegionA region_a(const DomainSpec& d);
bool in_region_a(const DomainSpec& d, const ExtPoint& p);

/// One round of digits: (-1:2, (-1:1)^{p-2}) even;
/// (-1:2, (-1:1)^h, -1:2, (-1:1)^{h-1}) odd.
std::vector<RosenDigit> round_block(const DomainSpec& d);

/// tau_k = [block^k ; tail = -2/(3 lambda)].
Real tau(const DomainSpec& d, int k);

/// Number of Theta values in the block governed by c_{k}: k * round + 2.
long block_length(const DomainSpec& d, int k);

/// c_{k-1} = -tau_{k-1} / (1 + top * tau_{k-1}); requires k >= 1.
Real tong_constant(const DomainSpec& d, int k);
/// The odd-case variant with lambda - R in place of top, as printed.
Real tong_constant_printed_odd(const DomainSpec& d, int k);
/// 1/sqrt5 + (1/sqrt5) ((3 - sqrt5)/2)^(2k+3); requires k >= 1.
Real classical_tong_constant(int k, Precision prec);

/// nu(A_k) in closed form. Odd q uses the printed formula with C = H_q and
/// D = C_q.
Real nu_Ak_closed(const DomainSpec& d, int k);
/// nu(A_k) by measure_region with a relative tolerance.
Real nu_Ak_quadrature(const DomainSpec& d, int k, double rel_tol = 1e-14);
/// Authoritative value: closed form for even q >= 6, quadrature otherwise.
Real nu_Ak(const DomainSpec& d, int k);
inline Real nu_A(const DomainSpec& d) { return nu_Ak(d, 0); }

struct FixedPointSet {
  ExtPoint seed;                ///< (lim tau_k, v*) in A
  std::vector<ExtPoint> orbit;  ///< T^i(seed), i = 0 .. round-1
  Real residual;                ///< max-norm of T^round(seed) - seed
};

/// The fixed points in D of T^round. The seed's t is the limit of tau_k and
/// its v the attracting fixed point of the round's v-map. Throws
/// FixedPointFailure if either iteration stalls.
FixedPointSet fixed_points(const DomainSpec& d);

struct SpectrumRow {
  int k = 0;
  long block_len = 0;
  std::optional<Real> tau;
  Real c;
  std::optional<Real> nu;
  std::optional<Real> nu_closed;
};

struct SpectrumTable {
  int q = 0;
  Real hurwitz;
  std::optional<Real> tau_limit;
  std::vector<SpectrumRow> rows;
};

/// Rows k = 0 .. k_max with c_k = tong_constant(d, k+1). q = 3 takes the
/// classical constants and leaves tau and nu empty.
SpectrumTable spectrum_table(int q, int k_max, Precision prec);

}  // namespace rosen
