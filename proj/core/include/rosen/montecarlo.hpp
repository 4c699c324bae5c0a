#pragma once

// Orbit simulation of the natural extension and the statistical checks built
// on it: block-event frequencies, Tong and Borel bounds, and the invariant
// distribution.
//
// Orbits are 256-bit pseudo-orbits by default. Each digit is computed exactly
// from the current t, so the digit string is the true expansion of a nearby
// point (the shadowing point); shadowing_audit reconstructs that point and
// checks it. SimConfig::auto_precision switches to bits = max(256, 4 n).

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rosen/core.hpp"
#include "rosen/domain.hpp"
#include "rosen/random.hpp"
#include "rosen/real.hpp"

namespace rosen {

struct SimConfig {
  int q = 8;
  long n_iterations = 10000;  ///< steps recorded per orbit, after burn-in
  long n_orbits = 1;
  std::uint64_t seed = 1;
  Precision precision{256};
  long burn_in = 1000;
  /// 0 means std::thread::hardware_concurrency().
  int workers = 0;
  bool auto_precision = false;

  /// Working precision for an orbit of n steps.
  Precision orbit_precision(long n_steps) const;
};

struct Statistic {
  std::string name;
  double estimate = 0;
  double std_error = 0;
  long samples = 0;
  std::optional<double> reference;
  double tolerance = 0;
  bool pass = true;
  std::string note;
};

struct SimReport {
  std::string name;
  std::vector<Statistic> statistics;

  bool passed() const;
  /// Throws std::out_of_range for an unknown name.
  const Statistic& at(const std::string& name) const;
};

/// One step of an orbit stream: the digit that produced (t_n, v_n) and the
/// coefficient pair (Theta_{n-1}, Theta_n).
struct OrbitElement {
  RosenDigit digit;
  ExtPoint point;
  Real theta_prev;
  Real theta_cur;
};

/// Elements n = 1..n of T^n(x0, 0); stops early at a G_q-rational.
std::vector<OrbitElement> orbit_stream(int q, const Real& x0, long n, Precision prec);

/// In-place orbit iterator for long runs. Starts at (x0, 0), index 0.
class OrbitCursor {
 public:
  OrbitCursor(int q, const Real& x0, Precision prec);

  /// Advances one step; returns false (and stays put) once t has reached 0.
  bool step();

  long index() const { return index_; }
  bool terminated() const { return terminated_; }
  const RosenDigit& digit() const { return digit_; }
  const Real& t() const { return t_; }
  const Real& v() const { return v_; }
  double t_double() const { return td_; }
  double v_double() const { return vd_; }
  /// v/(1+tv) and |t|/(1+tv) in double.
  double theta_prev() const { return vd_ / (1 + td_ * vd_); }
  double theta_cur() const { return std::abs(td_) / (1 + td_ * vd_); }

 private:
  Real lam_;
  Real half_lam_;
  Real threshold_;
  Real t_;
  Real v_;
  Real inv_;
  Real s_;
  Real tmp_;
  double td_ = 0;
  double vd_ = 0;
  RosenDigit digit_;
  long index_ = 0;
  bool terminated_ = false;
};

/// Uniform draw from [-lambda/2, lambda/2) with every bit random.
Real random_start(int q, RandomStream& rng, Precision prec);

/// Frequency of blocks of k*round + 2 coefficients above the threshold
/// followed by one below, against nu(A_{k-1}) - nu(A_k). Reports the 1/2
/// threshold, the H_q threshold, the A-entry cross-count, and the sign of t
/// at every flush. Expected counts below 25 switch to the Poisson interval.
SimReport block_event_frequency(const SimConfig& cfg, int k);

/// Zero violations of min(block of k*round+2) < c_{k-1} for k = 1..k_max,
/// over cfg.n_orbits orbits of cfg.n_iterations steps (burn-in ignored).
/// q = 3 uses blocks of k + 2 and the classical constants.
SimReport verify_tong_bound(const SimConfig& cfg, int k_max);

struct TongWitness {
  Real x;
  double block_min = 0;
  double constant = 0;
};

/// An orbit that enters A just right of the corner (tau_{k-1}, top) after
/// `rounds` rounds on the fixed cycle; its best block minimum approaches
/// c_{k-1} from below.
TongWitness tong_witness(const DomainSpec& d, int k, double offset = 1e-9, int rounds = 12);

/// Hits Theta_n <= H_q + 1e-12 at checkpoints 10^2, 10^3, 10^4 (those within
/// cfg.n_iterations) for every orbit.
SimReport verify_borel(const SimConfig& cfg);

struct BorelWitness {
  long steps = 0;
  long hits = 0;
  /// Complete rounds of the cycle period without a hit; 0 when every round
  /// passes the boundary point where Theta_n = H_q.
  long rounds_without_hit = 0;
  /// v_{k round} - v* for the seed cycle point, k = 1, 2, ...: negative and
  /// shrinking when the approach is from below.
  std::vector<double> v_gaps;
};

/// Orbit of x = f_q^i(t*) where (t*, v*) is the fixed cycle of a round,
/// run at 256 + 4 n_steps bits.
BorelWitness borel_witness(int q, int i, long n_steps);

/// 2D chi-square on an Omega-adapted grid and a t-marginal chi-square,
/// sampling every `thin`-th point after burn-in.
SimReport verify_distribution(const SimConfig& cfg, int grid = 30, int t_bins = 40, int thin = 10);

/// One step of T applied to nu-samples, binned on a grid x grid Omega-adapted
/// mesh: chi-square against nu-masses.
Statistic verify_measure_preservation(const DomainSpec& d, long n_samples, std::uint64_t seed,
                                      int grid = 50);

struct ShadowingAudit {
  long steps = 0;
  bool digits_match = false;
  double max_theta_error = 0;
  long reconstruction_bits = 0;
};

/// Reconstructs the point shadowed by an n-step pseudo-orbit at `prec` and
/// re-expands it at 4n bits (at least 256).
ShadowingAudit shadowing_audit(int q, const Real& x0, long n_steps, Precision prec);

}  // namespace rosen
