#pragma once

// The natural-extension domain Omega_q: a staircase of strips J_j x [0, L_j]
// over [-lambda/2, lambda/2), its invariant density C_q/(1+tv)^2, measures of
// subregions, and the inverse of the natural-extension map.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rosen/core.hpp"
#include "rosen/quadrature.hpp"
#include "rosen/random.hpp"
#include "rosen/real.hpp"

namespace rosen {

enum class Parity { even, odd };

/// J_j x [0, height]; `index` is the strip label j (1-based).
struct Strip {
  int index = 0;
  Real t_lo;
  Real t_hi;
  Real height;
};

struct DomainSpec {
  int q = 0;
  Parity parity = Parity::even;
  int p = 0;  ///< q = 2p (even)
  int h = 0;  ///< q = 2h + 3 (odd)
  Precision prec;
  Real lambda;
  /// phi_j = f_q^j(-lambda/2) for j = 0 .. last, with the last entry 0.
  std::vector<Real> phi;
  /// Strips sorted by t; together they tile [-lambda/2, lambda/2).
  std::vector<Strip> strips;
  /// nu of each strip, aligned with `strips`.
  std::vector<Real> masses;
  /// L_1 .. L_{p-1} (even) or L_1 .. L_{2h+1} (odd).
  std::vector<Real> L;
  Real R;
  Real C;
  /// Number of T-steps in one return of region A: p-1 or 2h+1.
  int round_length = 0;

  const Real& L_at(int j) const { return L.at(static_cast<std::size_t>(j - 1)); }
};

struct HeightSolution {
  std::vector<Real> L;
  Real R;
  long sweeps = 0;
};

/// Solves the cyclic height relations by Gauss-Seidel sweeps started from
/// L_j = 1/lambda. Throws DomainConstructionFailure after 10^4 sweeps.
HeightSolution solve_heights(int q, Precision prec);

/// |lhs - rhs| of every defining relation, in order
/// (R_0, R_1, ..., last).
std::vector<Real> relation_residuals(int q, const std::vector<Real>& L, const Real& R,
                                     const Real& lambda);

/// Requires q >= 4.
DomainSpec build_domain(int q, Precision prec);

/// Strip containing t, or nullptr when t is outside [-lambda/2, lambda/2).
const Strip* strip_at(const DomainSpec& d, const Real& t);
bool contains(const DomainSpec& d, const ExtPoint& p);
Real density(const DomainSpec& d, const ExtPoint& p);

/// nu(J x [0, height]) in closed form.
Real strip_mass(const DomainSpec& d, const Strip& s);

using Boundary = std::function<Real(const Real&)>;

/// nu of {t_lo <= t <= t_hi, v_lo(t) <= v <= v_hi(t)} intersected with Omega.
/// The v-integral is done analytically; the t-integral adaptively, split at
/// strip edges.
Real measure_region(const DomainSpec& d, const Real& t_lo, const Real& t_hi, const Boundary& v_lo,
                    const Boundary& v_hi, const QuadratureOptions& opts = {});

/// nu(Omega) by quadrature over every strip (1 up to quadrature error).
Real measure_omega(const DomainSpec& d, const QuadratureOptions& opts = {});

/// Exact draw from nu: strip by mass, then t and v by inverse CDFs.
ExtPoint sample_nu(const DomainSpec& d, RandomStream& rng);

struct InverseStep {
  RosenDigit digit;
  ExtPoint point;
};

/// The preimage of p under T inside Omega. Throws NoPreimage or
/// AmbiguousPreimage.
InverseStep natural_extension_inverse(const DomainSpec& d, const ExtPoint& p);

struct BijectivityFailure {
  ExtPoint point;
  std::string kind;
};

struct BijectivityReport {
  long checked = 0;
  std::vector<BijectivityFailure> failures;
};

/// For each point: T(point) in Omega and T^{-1}(T(point)) == point to
/// 2^(-bits/4) relative.
BijectivityReport audit_points(const DomainSpec& d, const std::vector<ExtPoint>& points);

/// audit_points on n_samples draws from nu.
BijectivityReport audit_bijectivity(const DomainSpec& d, long n_samples, std::uint64_t seed);

}  // namespace rosen
