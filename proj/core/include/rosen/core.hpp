#pragma once

// The one-dimensional Rosen map f_q, digit extraction, convergents,
// approximation coefficients and the natural-extension step.
//
// Notation: lambda = 2 cos(pi/q). A Rosen expansion of x in [-lambda/2, lambda/2)
// is x = e1/(r1 lambda + e2/(r2 lambda + ...)), written [e1:r1, e2:r2, ...].

#include <optional>
#include <utility>
#include <vector>

#include "rosen/real.hpp"

namespace rosen {

/// One partial quotient (epsilon, r): sign in {-1, +1}, r >= 1.
struct RosenDigit {
  int epsilon = 1;
  long r = 1;

  friend bool operator==(const RosenDigit&, const RosenDigit&) = default;
};

/// Digits of an expansion plus an optional tail value.
///
/// A tail y makes the innermost denominator r_n lambda + y, so
/// [d_1..d_n; tail = t_n] evaluates to x exactly when t_n = f_q^n(x).
/// Without a tail the last digit closes the fraction (a convergent).
struct RosenExpansion {
  int q = 3;
  std::vector<RosenDigit> digits;
  std::optional<Real> tail;
  bool terminated = false;
};

/// R_n / S_n with the seeds R_{-1}=1, R_0=0, S_{-1}=0, S_0=1.
struct Convergent {
  Real numerator;
  Real denominator;
  int index = 0;
};

/// A point of the natural-extension plane: future t and past v.
struct ExtPoint {
  Real t;
  Real v;
};

/// How rosen_step treats a value whose digit sits on a tie
/// (eps/(lambda x) + 1/2 within the zero threshold of an integer).
enum class TiePolicy {
  /// Treat the input as the exact tie and apply the half-open convention:
  /// r is the integer, f_q(x) = -lambda/2.
  half_open,
  /// Raise BoundaryAmbiguity.
  strict,
};

/// lambda_q = 2 cos(pi/q); throws InvalidParameter for q < 3.
Real lambda(int q, Precision prec);

struct StepResult {
  RosenDigit digit;
  Real next;
};

/// One application of f_q: returns the digit of x and f_q(x).
///
/// Throws GqRationalTermination when |x| is below the zero threshold of
/// `x.precision()`, and BoundaryAmbiguity on ties under TiePolicy::strict.
StepResult rosen_step(const Real& x, int q, TiePolicy ties = TiePolicy::half_open);
StepResult rosen_step(const Real& x, const Real& lam, TiePolicy ties = TiePolicy::half_open);

/// Up to n_max digits of x. Stops early (terminated = true, no tail) when the
/// orbit reaches 0; otherwise the remainder f_q^n(x) is kept as the tail.
RosenExpansion expand(const Real& x, int q, long n_max, Precision prec,
                      TiePolicy ties = TiePolicy::strict);

/// Back-substitutes e1/(r1 lambda + ... + e_n/(r_n lambda + tail)).
/// Throws IllFormedExpansion on a vanishing partial denominator.
Real evaluate(const RosenExpansion& expansion, Precision prec);

/// Convergents R_n/S_n for n = 1..digits.size().
std::vector<Convergent> convergents(const RosenExpansion& expansion, Precision prec);

/// S_n^2 |x - R_n/S_n|.
Real theta_direct(const Real& x, const Convergent& c);

struct NaturalExtensionStep {
  RosenDigit digit;
  ExtPoint point;
};

/// T(t, v) = (f_q(t), 1/(r lambda + eps v)) where (eps, r) is the digit of t.
NaturalExtensionStep natural_extension_step(const ExtPoint& p, int q,
                                            TiePolicy ties = TiePolicy::half_open);
NaturalExtensionStep natural_extension_step(const ExtPoint& p, const Real& lam,
                                            TiePolicy ties = TiePolicy::half_open);

/// (Theta_{n-1}, Theta_n) = (v/(1+tv), eps_next t/(1+tv)) at (t_n, v_n).
/// `eps_next` is the sign of the next digit. Throws OutsideDomain if 1+tv <= 0.
std::pair<Real, Real> theta_from_tv(const ExtPoint& p, int eps_next);

/// Theta_{n+1} from (t_n, v_n), the digit d_{n+1} = (eps, r) of t_n and the
/// sign eps_next2 of d_{n+2}.
Real theta_next(const ExtPoint& p, const RosenDigit& d, int eps_next2, const Real& lam);

/// v_n evaluated from the reversed digit block [1:r_n, e_n:r_{n-1}, ..., e_2:r_1].
Real past_from_digits(const std::vector<RosenDigit>& digits, std::size_t n, const Real& lam);

}  // namespace rosen
