#include "commands.hpp"

#include "expression.hpp"
#include "rosen/domain.hpp"
#include "rosen/errors.hpp"
#include "rosen/montecarlo.hpp"
#include "rosen/spectrum.hpp"

namespace rosen::cli {

namespace {

Record make_record(std::string command, Precision prec) {
  Record r;
  r.command = std::move(command);
  r.precision_bits = prec.bits;
  r.provenance["library_version"] = "1.0.0";
  r.provenance["zero_threshold_log2"] = prec.zero_threshold_log2();
  return r;
}

json optional_real(const std::optional<Real>& x) { return x ? real_value(*x) : json(nullptr); }

const char* parity_name(const DomainSpec& d) { return d.parity == Parity::even ? "even" : "odd"; }

}  // namespace

Record cmd_expand(const ExpandOptions& o, Precision prec) {
  if (o.n < 0) throw UsageError("--n must be non-negative");
  const Real lam = lambda(o.q, prec);
  Real x(prec);
  try {
    x = evaluate_expression(o.x, lam, prec);
  } catch (const ExpressionError& e) {
    throw UsageError("cannot parse --x '" + o.x + "': " + e.what());
  }
  if (x < -lam / 2 || !(x < lam / 2)) throw UsageError("x must lie in [-lambda/2, lambda/2)");

  Record r = make_record("expand", prec);
  r.params = {{"q", o.q}, {"x", o.x}, {"n", o.n},
              {"ties", o.ties == TiePolicy::strict ? "strict" : "half-open"}};
  r.provenance["tie_policy"] = r.params["ties"];

  const RosenExpansion e = expand(x, o.q, o.n, prec, o.ties);
  const auto conv = convergents(e, prec);
  r.results["x"] = real_value(x);
  r.results["lambda"] = real_value(lam);
  r.results["terminated"] = e.terminated;
  r.results["tail"] = optional_real(e.tail);

  Table t{"expansion", {"n", "epsilon", "r", "numerator", "denominator", "theta"}, {}};
  for (std::size_t i = 0; i < e.digits.size(); ++i) {
    t.add({static_cast<long>(i + 1), e.digits[i].epsilon, e.digits[i].r, real_value(conv[i].numerator),
           real_value(conv[i].denominator), real_value(theta_direct(x, conv[i]))});
  }
  r.tables.push_back(std::move(t));
  return r;
}

Record cmd_domain(int q, Precision prec) {
  const DomainSpec d = build_domain(q, prec);
  Record r = make_record("domain", prec);
  r.params = {{"q", q}};
  r.results["parity"] = parity_name(d);
  r.results["lambda"] = real_value(d.lambda);
  r.results["R"] = real_value(d.R);
  r.results["C"] = real_value(d.C);
  r.results["round_length"] = d.round_length;
  r.results["staircase_steps"] = d.strips.size();
  const QuadratureOptions quad;
  r.results["nu_omega"] = real_value(measure_omega(d, quad));
  r.provenance["quadrature_abs_tol"] = quad.abs_tol;

  Table phi{"phi", {"j", "value"}, {}};
  for (std::size_t j = 0; j < d.phi.size(); ++j) phi.add({static_cast<long>(j), real_value(d.phi[j])});
  Table heights{"L", {"j", "value"}, {}};
  for (std::size_t j = 0; j < d.L.size(); ++j) heights.add({static_cast<long>(j + 1), real_value(d.L[j])});
  Table strips{"strips", {"index", "t_lo", "t_hi", "height", "mass"}, {}};
  Table vertices{"staircase", {"t", "v"}, {}};
  vertices.add({real_value(d.strips.front().t_lo), "0"});
  for (std::size_t i = 0; i < d.strips.size(); ++i) {
    const Strip& s = d.strips[i];
    strips.add({s.index, real_value(s.t_lo), real_value(s.t_hi), real_value(s.height), real_value(d.masses[i])});
    vertices.add({real_value(s.t_lo), real_value(s.height)});
    vertices.add({real_value(s.t_hi), real_value(s.height)});
  }
  vertices.add({real_value(d.strips.back().t_hi), "0"});
  r.tables = {std::move(phi), std::move(heights), std::move(strips), std::move(vertices)};
  return r;
}

Record cmd_boundary(const BoundaryOptions& o, Precision prec) {
  if (o.points < 2) throw UsageError("--points must be at least 2");
  const DomainSpec d = build_domain(o.q, prec);
  const Real& lam = d.lambda;
  Record r = make_record("boundary", prec);
  r.params = {{"q", o.q}, {"region", o.region}, {"points", o.points}};

  Table t{"boundary", {"t", "v", "curve_id"}, {}};
  const auto sample = [&](const std::string& id, const Real& lo, const Real& hi, auto&& curve) {
    for (int i = 0; i < o.points; ++i) {
      const Real s = lo + (hi - lo) * i / (o.points - 1);
      t.add({real_value(s), real_value(curve(s)), id});
    }
  };
  const Real left = -lam / 2;

  if (o.region == "omega") {
    for (const Strip& s : d.strips) {
      sample("strip_" + std::to_string(s.index), s.t_lo, s.t_hi, [&](const Real&) { return s.height; });
    }
  } else if (o.region == "D") {
    const DCurves c = d_boundaries(o.q, prec);
    const Real right = -d.L_at(1);
    sample("f", left, right, [&](const Real& s) { return c.f(s); });
    sample("g", left, right, [&](const Real& s) { return c.g(s); });
  } else if (o.region == "A") {
    const RegionA a = region_a(d);
    sample("lower", a.tau0, a.t_end, [&](const Real& s) { return a.lower(s); });
    sample("top", a.tau0, a.t_end, [&](const Real&) { return a.top; });
  } else if (o.region == "C" || o.region == "B") {
    if (d.parity != Parity::even) throw UsageError("region " + o.region + " is drawn for even q only");
    if (o.region == "C") {
      sample("h", left, -1 / lam, [&](const Real& s) { return curve_h(s, lam); });
    } else {
      sample("l", -1 / lam, region_a(d).tau0, [&](const Real& s) { return curve_l(s, lam); });
    }
  } else {
    throw UsageError("unknown region '" + o.region + "' (expected omega, D, A, B or C)");
  }
  r.tables.push_back(std::move(t));
  return r;
}

Record cmd_spectrum(int q, int k_max, Precision prec) {
  if (k_max < 0) throw UsageError("--kmax must be non-negative");
  const SpectrumTable s = spectrum_table(q, k_max, prec);
  Record r = make_record("spectrum", prec);
  r.params = {{"q", q}, {"kmax", k_max}};
  r.results["hurwitz"] = real_value(s.hurwitz);
  r.results["tau_limit"] = optional_real(s.tau_limit);
  r.provenance["nu_method"] = q == 3 ? "none" : (q % 2 == 0 && q >= 6 ? "closed form" : "quadrature");

  Table t{"rows", {"k", "block_len", "tau", "c", "nu", "nu_closed"}, {}};
  for (const SpectrumRow& row : s.rows) {
    t.add({row.k, row.block_len, optional_real(row.tau), real_value(row.c), optional_real(row.nu),
           optional_real(row.nu_closed)});
  }
  r.tables.push_back(std::move(t));
  return r;
}

Record cmd_simulate(const SimulateOptions& o, Precision prec) {
  if (o.iters <= 0 || o.orbits <= 0 || o.burnin < 0) {
    throw UsageError("--iters and --orbits must be positive and --burnin non-negative");
  }
  if (o.threshold != "half" && o.threshold != "hq" && o.threshold != "both") {
    throw UsageError("--threshold must be half, hq or both");
  }
  SimConfig cfg;
  cfg.q = o.q;
  cfg.n_iterations = o.iters;
  cfg.n_orbits = o.orbits;
  cfg.seed = o.seed;
  cfg.burn_in = o.burnin;
  cfg.workers = o.workers;
  cfg.precision = prec;

  Record r = make_record("simulate " + o.kind, prec);
  r.params = {{"q", o.q}, {"iters", o.iters}, {"orbits", o.orbits}, {"seed", o.seed}, {"burnin", o.burnin}};
  r.provenance["seed"] = o.seed;

  SimReport report;
  if (o.kind == "blocks") {
    r.params["k"] = o.k;
    r.params["threshold"] = o.threshold;
    report = block_event_frequency(cfg, o.k);
  } else if (o.kind == "tong") {
    r.params["kmax"] = o.kmax;
    report = verify_tong_bound(cfg, o.kmax);
  } else if (o.kind == "borel") {
    report = verify_borel(cfg);
  } else if (o.kind == "distribution") {
    r.params["grid"] = o.grid;
    r.params["t_bins"] = o.t_bins;
    r.params["thin"] = o.thin;
    report = verify_distribution(cfg, o.grid, o.t_bins, o.thin);
  } else {
    throw UsageError("unknown simulation '" + o.kind + "'");
  }

  const auto asserted = [&](const std::string& name) {
    if (name == "frequency_half") return o.threshold != "hq";
    if (name == "frequency_hq") return o.threshold != "half";
    return true;
  };
  Table t{"statistics",
          {"name", "estimate", "std_error", "samples", "reference", "tolerance", "pass", "asserted", "note"},
          {}};
  for (const Statistic& s : report.statistics) {
    const bool checked = asserted(s.name);
    t.add({s.name, s.estimate, s.std_error, s.samples, s.reference ? json(*s.reference) : json(nullptr), s.tolerance,
           s.pass, checked, s.note});
    if (checked && !s.pass) r.failures.push_back(s.name);
  }
  r.results["passed"] = r.failures.empty();
  r.tables.push_back(std::move(t));
  return r;
}

}  // namespace rosen::cli
