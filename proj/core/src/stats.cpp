#include "rosen/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <algorithm>
#include <cmath>

#include "rosen/errors.hpp"

namespace rosen::stats {

double chi_square_quantile(int dof, double p) {
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::quantile(dist, p);
}

ChiSquareResult chi_square(const std::vector<double>& observed, const std::vector<double>& expected,
                           double alpha, double min_expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw InvalidParameter("chi-square needs matching, nonempty cell lists");
  }
  std::vector<double> obs;
  std::vector<double> exp;
  double acc_o = 0;
  double acc_e = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_o += observed[i];
    acc_e += expected[i];
    if (acc_e >= min_expected) {
      obs.push_back(acc_o);
      exp.push_back(acc_e);
      acc_o = acc_e = 0;
    }
  }
  if (acc_e > 0 || acc_o > 0) {
    if (exp.empty()) {
      obs.push_back(acc_o);
      exp.push_back(acc_e);
    } else {
      obs.back() += acc_o;
      exp.back() += acc_e;
    }
  }

  ChiSquareResult out;
  out.cells = static_cast<int>(obs.size());
  out.dof = std::max(1, out.cells - 1);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double diff = obs[i] - exp[i];
    out.statistic += diff * diff / exp[i];
  }
  boost::math::chi_squared_distribution<double> dist(out.dof);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  out.critical = boost::math::quantile(dist, 1 - alpha);
  out.pass = out.statistic <= out.critical;
  return out;
}

CountInterval poisson_interval(double mean, double coverage) {
  if (mean <= 0) return {0, 0};
  boost::math::poisson_distribution<double> dist(mean);
  const double tail = (1 - coverage) / 2;
  return {static_cast<long>(boost::math::quantile(dist, tail)),
          static_cast<long>(boost::math::quantile(boost::math::complement(dist, tail)))};
}

double binomial_se(double p, double n) {
  if (n <= 0) return 0;
  return std::sqrt(std::max(0.0, p * (1 - p)) / n);
}

}  // namespace rosen::stats
