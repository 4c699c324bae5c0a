#pragma once

#include <cstdint>
#include <string>

#include "record.hpp"
#include "rosen/core.hpp"

namespace rosen::cli {

/// Bad input detected after flag parsing; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExpandOptions {
  int q = 8;
  std::string x;
  long n = 20;
  TiePolicy ties = TiePolicy::strict;
};

struct BoundaryOptions {
  int q = 8;
  std::string region = "D";
  int points = 200;
};

struct SimulateOptions {
  std::string kind;  ///< blocks, tong, borel or distribution
  int q = 8;
  long iters = 10000;
  long orbits = 1;
  std::uint64_t seed = 1;
  long burnin = 1000;
  int k = 1;
  int kmax = 3;
  std::string threshold = "both";  ///< half, hq or both
  int workers = 0;
  int grid = 30;
  int t_bins = 40;
  int thin = 10;
};

Record cmd_expand(const ExpandOptions& o, Precision prec);
Record cmd_domain(int q, Precision prec);
Record cmd_boundary(const BoundaryOptions& o, Precision prec);
Record cmd_spectrum(int q, int k_max, Precision prec);
Record cmd_simulate(const SimulateOptions& o, Precision prec);

}  // namespace rosen::cli
