#pragma once

#include <vector>

namespace rosen::stats {

struct ChiSquareResult {
  double statistic = 0;
  int dof = 0;
  int cells = 0;  ///< after pooling
  double p_value = 1;
  double critical = 0;
  bool pass = true;
};

/// Pearson chi-square of observed counts against expected counts (same total
/// assumed). Cells with expected < min_expected are pooled in order. Passes
/// when the statistic is at most the (1 - alpha) quantile.
ChiSquareResult chi_square(const std::vector<double>& observed, const std::vector<double>& expected,
                           double alpha = 0.001, double min_expected = 5.0);

double chi_square_quantile(int dof, double p);

struct CountInterval {
  long lo = 0;
  long hi = 0;
};

/// Central interval of a Poisson(mean) count with the given coverage.
CountInterval poisson_interval(double mean, double coverage = 0.99);

/// sqrt(p (1 - p) / n).
double binomial_se(double p, double n);

}  // namespace rosen::stats
