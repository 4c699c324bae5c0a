#pragma once

#include <functional>

#include "rosen/real.hpp"

namespace rosen {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  /// Relative tolerance against a coarse first estimate; 0 disables it.
  double rel_tol = 0.0;
  int max_depth = 60;
};

struct QuadratureResult {
  Real value;
  Real error_estimate;
  long evaluations = 0;
};

/// Adaptive Simpson on [a, b] with Richardson acceptance: a panel is accepted
/// once |S(left) + S(right) - S(whole)| <= 15 tol, and returns the
/// extrapolated sum. Subdivision order is fixed, so results are reproducible
/// bit for bit. Throws IntegrationFailure past max_depth.
QuadratureResult integrate(const std::function<Real(const Real&)>& f, const Real& a,
                           const Real& b, const QuadratureOptions& opts = {});

}  // namespace rosen
