// rosen: expansions, domain dumps, spectrum tables and simulations.
// Exit codes: 0 pass, 1 failed assertion, 2 usage error, 3 numerical ambiguity.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "rosen/errors.hpp"

using namespace rosen;
using namespace rosen::cli;

namespace {

enum Exit { kPass = 0, kAssertion = 1, kUsage = 2, kAmbiguity = 3 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rosen continued fractions: expansions, natural-extension domains, Tong spectra and simulations"};
  app.require_subcommand(1);

  long bits = Precision::process_default().bits;
  std::string format = "json";
  app.add_option("--precision", bits, "working precision in bits (default from ROSEN_PRECISION_BITS, else 256)")
      ->check(CLI::Range(Precision::kMinBits, 1L << 20));
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

  ExpandOptions ex;
  bool half_open = false;
  auto* expand_cmd = app.add_subcommand("expand", "digits, convergents and approximation coefficients of x");
  expand_cmd->add_option("--q", ex.q, "index q >= 3")->required()->check(CLI::Range(3, 1000));
  expand_cmd->add_option("--x", ex.x, "number or expression in pi, lambda, sqrt(n)")->required();
  expand_cmd->add_option("--n", ex.n, "maximum number of digits");
  expand_cmd->add_flag("--half-open", half_open, "resolve digit ties by the half-open convention instead of failing");

  int q = 8;
  auto* domain_cmd = app.add_subcommand("domain", "strips, heights and normalizer of the natural-extension domain");
  domain_cmd->add_option("--q", q, "index q >= 4")->required()->check(CLI::Range(4, 1000));

  BoundaryOptions bo;
  auto* boundary_cmd = app.add_subcommand("boundary", "sampled boundary curves as (t, v, curve_id)");
  boundary_cmd->add_option("--q", bo.q, "index q >= 4")->required()->check(CLI::Range(4, 1000));
  boundary_cmd->add_option("--region", bo.region, "omega, D, A, B or C");
  boundary_cmd->add_option("--points", bo.points, "samples per curve");

  int k_max = 5;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "tau_k, Tong constants c_k and measures of A_k");
  spectrum_cmd->add_option("--q", q, "index q >= 3")->required()->check(CLI::Range(3, 1000));
  spectrum_cmd->add_option("--kmax", k_max, "largest k");

  SimulateOptions so;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo checks on natural-extension orbits");
  simulate_cmd->require_subcommand(1);
  const auto sim_flags = [&](CLI::App* sub) {
    sub->add_option("--q", so.q, "index q")->check(CLI::Range(3, 1000));
    sub->add_option("--iters", so.iters, "steps per orbit after burn-in");
    sub->add_option("--orbits", so.orbits, "number of orbits");
    sub->add_option("--seed", so.seed, "random seed");
    sub->add_option("--burnin", so.burnin, "discarded steps per orbit");
    sub->add_option("--workers", so.workers, "threads (0 = all cores)");
    sub->callback([&so, sub] { so.kind = sub->get_name(); });
  };
  auto* blocks = simulate_cmd->add_subcommand("blocks", "frequency of long runs of large coefficients");
  sim_flags(blocks);
  blocks->add_option("--k", so.k, "block index k >= 1")->check(CLI::PositiveNumber);
  blocks->add_option("--threshold", so.threshold, "half, hq or both");
  auto* tong = simulate_cmd->add_subcommand("tong", "Tong bound on block minima");
  sim_flags(tong);
  tong->add_option("--kmax", so.kmax, "largest k")->check(CLI::PositiveNumber);
  auto* borel = simulate_cmd->add_subcommand("borel", "hits of Theta_n <= H_q at checkpoints");
  sim_flags(borel);
  auto* distribution = simulate_cmd->add_subcommand("distribution", "chi-square against the invariant density");
  sim_flags(distribution);
  distribution->add_option("--grid", so.grid, "cells per axis of the 2D grid");
  distribution->add_option("--tbins", so.t_bins, "bins of the t-marginal");
  distribution->add_option("--thin", so.thin, "keep every n-th point");

  // Global flags may follow the subcommand.
  for (CLI::App* sub : {expand_cmd, domain_cmd, boundary_cmd, spectrum_cmd, simulate_cmd, blocks, tong, borel,
                        distribution}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  const Precision prec{bits};
  try {
    Record record;
    if (*expand_cmd) {
      ex.ties = half_open ? TiePolicy::half_open : TiePolicy::strict;
      record = cmd_expand(ex, prec);
    } else if (*domain_cmd) {
      record = cmd_domain(q, prec);
    } else if (*boundary_cmd) {
      record = cmd_boundary(bo, prec);
    } else if (*spectrum_cmd) {
      record = cmd_spectrum(q, k_max, prec);
    } else {
      record = cmd_simulate(so, prec);
    }
    if (format == "csv") {
      write_csv(std::cout, record);
    } else {
      write_json(std::cout, record);
    }
    if (!record.failures.empty()) {
      std::cerr << "assertion failed:";
      for (const auto& name : record.failures) std::cerr << ' ' << name;
      std::cerr << '\n';
      return kAssertion;
    }
    return kPass;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BoundaryAmbiguity& e) {
    std::cerr << "ambiguous: " << e.what() << '\n';
    return kAmbiguity;
  } catch (const AmbiguousPreimage& e) {
    std::cerr << "ambiguous: " << e.what() << '\n';
    return kAmbiguity;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kAssertion;
  }
}
