#include "rosen/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rosen/errors.hpp"
#include "rosen/spectrum.hpp"
#include "rosen/stats.hpp"

namespace rosen {

namespace {

// Runs fn(i) for i in [0, n) on `workers` threads. Each task writes only its
// own result slot, so the outcome does not depend on scheduling.
template <class Fn>
void run_parallel(long n, int workers, Fn&& fn) {
  int w = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  w = static_cast<int>(std::clamp<long>(w, 1, std::max(1L, n)));
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (w == 1) {
    body();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) threads.emplace_back(body);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Frequency statistic with the rare-event policy.
Statistic frequency_statistic(const std::string& name, long events, long n, double reference) {
  Statistic s;
  s.name = name;
  s.samples = n;
  s.reference = reference;
  const double nn = static_cast<double>(n);
  s.estimate = n > 0 ? static_cast<double>(events) / nn : 0.0;
  const double expected = reference * nn;
  if (expected < 25) {
    const auto iv = stats::poisson_interval(expected, 0.99);
    s.pass = events >= iv.lo && events <= iv.hi;
    s.std_error = std::sqrt(std::max(expected, 0.0)) / std::max(nn, 1.0);
    s.tolerance = static_cast<double>(iv.hi - iv.lo) / (2 * std::max(nn, 1.0));
    s.note = "insufficient sample, sign-consistency only: expected count " + fmt_double(expected) +
             " < 25, observed " + std::to_string(events) + " checked against Poisson 99% interval [" +
             std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + "]";
  } else {
    s.std_error = stats::binomial_se(events > 0 ? s.estimate : reference, nn);
    s.tolerance = 3 * s.std_error;
    s.pass = std::abs(s.estimate - reference) <= s.tolerance;
    s.note = "3 standard errors; observed " + std::to_string(events) + " events, expected " +
             fmt_double(expected);
  }
  return s;
}

struct RegionADouble {
  double tau0, t_end, top, H;
  bool contains(double t, double v) const {
    if (t < tau0 || t > t_end || v > top) return false;
    const double g = (std::abs(t) - H) / (H * t);
    const double f = H / (1 - H * t);
    return v >= std::max(f, g);
  }
};

RegionADouble region_a_double(const DomainSpec& d) {
  const RegionA a = region_a(d);
  return {a.tau0.to_double(), a.t_end.to_double(), a.top.to_double(), a.curves.H.to_double()};
}

// Omega-adapted mesh: t-cells never straddle a strip edge, each t-cell is cut
// into `nv` equal pieces of its strip height.
struct OmegaGrid {
  std::vector<double> t_edges;
  std::vector<double> heights;
  int nv = 1;
  double C = 0;

  OmegaGrid(const DomainSpec& d, int nt, int nv_) : nv(nv_), C(d.C.to_double()) {
    const double lo = d.strips.front().t_lo.to_double();
    const double hi = d.strips.back().t_hi.to_double();
    for (int i = 0; i <= nt; ++i) t_edges.push_back(lo + (hi - lo) * i / nt);
    for (std::size_t s = 1; s < d.strips.size(); ++s) t_edges.push_back(d.strips[s].t_lo.to_double());
    std::sort(t_edges.begin(), t_edges.end());
    t_edges.erase(std::unique(t_edges.begin(), t_edges.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                  t_edges.end());
    for (std::size_t i = 0; i + 1 < t_edges.size(); ++i) {
      const double mid = 0.5 * (t_edges[i] + t_edges[i + 1]);
      const Strip* s = strip_at(d, Real(mid, d.prec));
      heights.push_back(s->height.to_double());
    }
  }

  std::size_t size() const { return heights.size() * static_cast<std::size_t>(nv); }

  long cell(double t, double v) const {
    auto it = std::upper_bound(t_edges.begin(), t_edges.end(), t);
    if (it == t_edges.begin() || it == t_edges.end()) return -1;
    const std::size_t ti = static_cast<std::size_t>(it - t_edges.begin()) - 1;
    const double h = heights[ti];
    if (v < 0 || v > h) return -1;
    const int vi = std::min(nv - 1, static_cast<int>(v / h * nv));
    return static_cast<long>(ti) * nv + vi;
  }

  // nu of every cell in closed form.
  std::vector<double> masses() const {
    std::vector<double> out;
    out.reserve(size());
    for (std::size_t ti = 0; ti < heights.size(); ++ti) {
      const double a = t_edges[ti];
      const double b = t_edges[ti + 1];
      for (int vi = 0; vi < nv; ++vi) {
        const double v0 = heights[ti] * vi / nv;
        const double v1 = heights[ti] * (vi + 1) / nv;
        const double upper = std::log1p(b * v1) - std::log1p(a * v1);
        const double lower = std::log1p(b * v0) - std::log1p(a * v0);
        out.push_back(C * (upper - lower));
      }
    }
    return out;
  }
};

// nu([a, b) x R) for the t-marginal.
double t_marginal_mass(const DomainSpec& d, double a, double b) {
  double total = 0;
  for (const Strip& s : d.strips) {
    const double lo = std::max(a, s.t_lo.to_double());
    const double hi = std::min(b, s.t_hi.to_double());
    if (!(lo < hi)) continue;
    const double L = s.height.to_double();
    total += std::log1p(hi * L) - std::log1p(lo * L);
  }
  return d.C.to_double() * total;
}

Statistic chi_square_statistic(const std::string& name, const std::vector<long>& counts,
                               const std::vector<double>& masses, long outside) {
  long n = outside;
  for (long c : counts) n += c;
  std::vector<double> observed(counts.begin(), counts.end());
  std::vector<double> expected;
  double total_mass = 0;
  for (double m : masses) total_mass += m;
  for (double m : masses) expected.push_back(m / total_mass * static_cast<double>(n - outside));
  const auto res = stats::chi_square(observed, expected, 0.001, 5.0);
  Statistic s;
  s.name = name;
  s.estimate = res.statistic;
  s.samples = n;
  s.reference = res.critical;
  s.pass = res.pass && outside == 0;
  s.note = "chi-square " + fmt_double(res.statistic) + " on " + std::to_string(res.dof) +
           " dof, 99.9% quantile " + fmt_double(res.critical) + ", p = " + fmt_double(res.p_value);
  if (outside > 0) s.note += "; " + std::to_string(outside) + " points outside Omega";
  return s;
}

}  // namespace

Precision SimConfig::orbit_precision(long n_steps) const {
  if (!auto_precision) return precision;
  return Precision{std::max({precision.bits, 256L, 4 * n_steps})};
}

bool SimReport::passed() const {
  return std::all_of(statistics.begin(), statistics.end(), [](const Statistic& s) { return s.pass; });
}

const Statistic& SimReport::at(const std::string& key) const {
  for (const auto& s : statistics) {
    if (s.name == key) return s;
  }
  throw std::out_of_range("no statistic named " + key);
}

std::vector<OrbitElement> orbit_stream(int q, const Real& x0, long n, Precision prec) {
  const Real lam = lambda(q, prec);
  const Real threshold = zero_threshold(prec);
  std::vector<OrbitElement> out;
  ExtPoint p{x0.with_precision(prec), Real(prec)};
  for (long i = 0; i < n; ++i) {
    if (abs(p.t) < threshold) break;
    auto step = natural_extension_step(p, lam, TiePolicy::half_open);
    p = std::move(step.point);
    const int eps_next = p.t.sign() < 0 ? -1 : 1;
    auto [prev, cur] = theta_from_tv(p, eps_next);
    out.push_back({step.digit, p, std::move(prev), std::move(cur)});
  }
  return out;
}

OrbitCursor::OrbitCursor(int q, const Real& x0, Precision prec)
    : lam_(lambda(q, prec)),
      half_lam_(lam_ / 2),
      threshold_(zero_threshold(prec)),
      t_(x0.with_precision(prec)),
      v_(prec),
      inv_(prec),
      s_(prec),
      tmp_(prec) {
  td_ = t_.to_double();
  vd_ = 0;
}

bool OrbitCursor::step() {
  if (terminated_) return false;
  mpfr_abs(tmp_.get(), t_.get(), MPFR_RNDN);
  if (mpfr_less_p(tmp_.get(), threshold_.get())) {
    terminated_ = true;
    return false;
  }
  // Same operation sequence as rosen_step, without temporaries.
  const int eps = mpfr_sgn(t_.get()) < 0 ? -1 : 1;
  mpfr_si_div(inv_.get(), 1, tmp_.get(), MPFR_RNDN);
  mpfr_div(s_.get(), inv_.get(), lam_.get(), MPFR_RNDN);
  mpfr_add_d(s_.get(), s_.get(), 0.5, MPFR_RNDN);
  long r = mpfr_get_si(s_.get(), MPFR_RNDD);
  mpfr_sub_si(tmp_.get(), s_.get(), r, MPFR_RNDN);  // fractional part
  bool tie = false;
  if (mpfr_less_p(tmp_.get(), threshold_.get())) {
    tie = true;
  } else {
    mpfr_si_sub(tmp_.get(), 1, tmp_.get(), MPFR_RNDN);
    if (mpfr_less_p(tmp_.get(), threshold_.get())) {
      tie = true;
      r += 1;
    }
  }
  if (r < 1) throw InvalidParameter("orbit left [-lambda/2, lambda/2)");

  mpfr_mul_si(tmp_.get(), lam_.get(), r, MPFR_RNDN);  // r lambda
  mpfr_sub(t_.get(), inv_.get(), tmp_.get(), MPFR_RNDN);
  if (tie) {
    mpfr_neg(s_.get(), half_lam_.get(), MPFR_RNDN);
    if (mpfr_less_p(t_.get(), s_.get())) mpfr_set(t_.get(), s_.get(), MPFR_RNDN);
  }
  if (eps > 0) {
    mpfr_add(tmp_.get(), tmp_.get(), v_.get(), MPFR_RNDN);
  } else {
    mpfr_sub(tmp_.get(), tmp_.get(), v_.get(), MPFR_RNDN);
  }
  mpfr_si_div(v_.get(), 1, tmp_.get(), MPFR_RNDN);

  digit_ = RosenDigit{eps, r};
  ++index_;
  td_ = t_.to_double();
  vd_ = v_.to_double();
  return true;
}

Real random_start(int q, RandomStream& rng, Precision prec) {
  const Real lam = lambda(q, prec);
  return rng.uniform_real(prec) * lam - lam / 2;
}

SimReport block_event_frequency(const SimConfig& cfg, int k) {
  if (k < 1) throw InvalidParameter("block events need k >= 1");
  if (cfg.n_iterations < 1 || cfg.burn_in < 0 || cfg.n_orbits < 1) {
    throw InvalidParameter("invalid simulation configuration");
  }
  const DomainSpec d = build_domain(cfg.q, cfg.precision);
  const long block = block_length(d, k);
  const double H = hurwitz_constant(cfg.q, cfg.precision).to_double();
  const double reference = (nu_Ak(d, k - 1) - nu_Ak(d, k)).to_double();
  const double tau_lo = tau(d, k - 1).to_double();
  const double tau_hi = tau(d, k).to_double();
  const RegionADouble region = region_a_double(d);

  struct Counts {
    long n = 0;
    long events_half = 0;
    long events_hq = 0;
    long region = 0;
    long flushes = 0;
    long flush_nonpositive = 0;
  };
  std::vector<Counts> per_orbit(static_cast<std::size_t>(cfg.n_orbits));

  run_parallel(cfg.n_orbits, cfg.workers, [&](long orbit) {
    const long burn = cfg.burn_in;
    const long window_end = burn + cfg.n_iterations;  // j in [burn, window_end)
    const long total = window_end + block + 1;
    const Precision prec = cfg.orbit_precision(total);
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(orbit));
    OrbitCursor cur(cfg.q, random_start(cfg.q, rng, prec), prec);
    Counts c;
    long run_half = 0;
    long run_hq = 0;
    // Theta_m at index m; a run of >= block values above the threshold that
    // ends at m - 1 is one event with start j = m - block + 1.
    auto close_run = [&](long& run, double theta, double thr, long m, long& events, bool flush_check) {
      if (theta > thr) {
        ++run;
        return;
      }
      if (theta < thr && run >= block) {
        const long j = m - block + 1;
        if (j >= burn && j < window_end) {
          ++events;
          if (flush_check) {
            ++c.flushes;
            if (!(cur.t_double() > 0)) ++c.flush_nonpositive;
          }
        }
      }
      run = 0;
    };
    for (long m = 0; m <= total; ++m) {
      if (m > 0 && !cur.step()) break;
      const double theta = cur.theta_cur();
      close_run(run_half, theta, 0.5, m, c.events_half, false);
      close_run(run_hq, theta, H, m, c.events_hq, true);
      if (m >= burn && m < window_end) {
        const double t = cur.t_double();
        const double v = cur.v_double();
        const bool in_d = std::min(cur.theta_prev(), theta) > H;
        if (in_d && region.contains(t, v) && t >= tau_lo && t < tau_hi) ++c.region;
      }
    }
    c.n = cur.terminated() ? std::clamp(cur.index() - block - burn, 0L, cfg.n_iterations)
                           : cfg.n_iterations;
    per_orbit[static_cast<std::size_t>(orbit)] = c;
  });

  Counts sum;
  for (const Counts& c : per_orbit) {
    sum.n += c.n;
    sum.events_half += c.events_half;
    sum.events_hq += c.events_hq;
    sum.region += c.region;
    sum.flushes += c.flushes;
    sum.flush_nonpositive += c.flush_nonpositive;
  }

  SimReport report;
  report.name = "blocks q=" + std::to_string(cfg.q) + " k=" + std::to_string(k);
  report.statistics.push_back(frequency_statistic("frequency_half", sum.events_half, sum.n, reference));
  report.statistics.push_back(frequency_statistic("frequency_hq", sum.events_hq, sum.n, reference));

  Statistic cross;
  cross.name = "region_entries_match";
  cross.estimate = static_cast<double>(sum.region);
  cross.samples = sum.n;
  cross.reference = static_cast<double>(sum.events_hq);
  cross.pass = sum.region == sum.events_hq;
  cross.note = std::to_string(sum.region) + " visits to A_{k-1}\\A_k vs " +
               std::to_string(sum.events_hq) + " threshold events";
  report.statistics.push_back(cross);

  Statistic flush;
  flush.name = "flush_positive";
  flush.estimate = static_cast<double>(sum.flush_nonpositive);
  flush.samples = sum.flushes;
  flush.reference = 0.0;
  flush.pass = sum.flush_nonpositive == 0;
  flush.note = std::to_string(sum.flushes) + " flushes checked, " +
               std::to_string(sum.flush_nonpositive) + " with t <= 0";
  report.statistics.push_back(flush);
  return report;
}

SimReport verify_tong_bound(const SimConfig& cfg, int k_max) {
  if (k_max < 1) throw InvalidParameter("k_max must be >= 1");
  std::vector<long> blocks;
  std::vector<double> bounds;
  if (cfg.q == 3) {
    for (int k = 1; k <= k_max; ++k) {
      blocks.push_back(k + 2);
      bounds.push_back(classical_tong_constant(k, cfg.precision).to_double());
    }
  } else {
    const DomainSpec d = build_domain(cfg.q, cfg.precision);
    for (int k = 1; k <= k_max; ++k) {
      blocks.push_back(block_length(d, k));
      bounds.push_back(tong_constant(d, k).to_double());
    }
  }
  const std::size_t nk = blocks.size();

  struct Result {
    std::vector<double> max_min;
    std::vector<long> violations;
    std::vector<long> windows;
  };
  std::vector<Result> per_orbit(static_cast<std::size_t>(cfg.n_orbits));

  run_parallel(cfg.n_orbits, cfg.workers, [&](long orbit) {
    const Precision prec = cfg.orbit_precision(cfg.n_iterations);
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(orbit));
    OrbitCursor cur(cfg.q, random_start(cfg.q, rng, prec), prec);
    Result res{std::vector<double>(nk, 0.0), std::vector<long>(nk, 0), std::vector<long>(nk, 0)};
    std::vector<std::deque<std::pair<long, double>>> mins(nk);
    for (long m = 0; m <= cfg.n_iterations; ++m) {
      if (m > 0 && !cur.step()) break;
      const double theta = cur.theta_cur();  // Theta_m
      for (std::size_t i = 0; i < nk; ++i) {
        auto& dq = mins[i];
        while (!dq.empty() && dq.back().second >= theta) dq.pop_back();
        dq.emplace_back(m, theta);
        const long start = m - blocks[i] + 1;
        while (dq.front().first < start) dq.pop_front();
        if (start < 0) continue;
        const double block_min = dq.front().second;
        ++res.windows[i];
        res.max_min[i] = std::max(res.max_min[i], block_min);
        if (!(block_min < bounds[i])) ++res.violations[i];
      }
    }
    per_orbit[static_cast<std::size_t>(orbit)] = std::move(res);
  });

  SimReport report;
  report.name = "tong q=" + std::to_string(cfg.q);
  for (std::size_t i = 0; i < nk; ++i) {
    Statistic s;
    s.name = "tong_k" + std::to_string(i + 1);
    long violations = 0;
    for (const Result& r : per_orbit) {
      s.estimate = std::max(s.estimate, r.max_min[i]);
      s.samples += r.windows[i];
      violations += r.violations[i];
    }
    s.reference = bounds[i];
    s.pass = violations == 0;
    s.note = std::to_string(violations) + " violations; block length " + std::to_string(blocks[i]) +
             ", largest block minimum " + fmt_double(s.estimate) + ", gap to c_" +
             std::to_string(i) + " = " + fmt_double(bounds[i] - s.estimate);
    report.statistics.push_back(s);
  }
  return report;
}

TongWitness tong_witness(const DomainSpec& d, int k, double offset, int rounds) {
  if (k < 1) throw InvalidParameter("witness needs k >= 1");
  const long block = block_length(d, k);
  const long steps = static_cast<long>(rounds + k + 1) * d.round_length + 4;
  const Precision prec{std::max(d.prec.bits, 256 + 8 * steps)};
  const DomainSpec hp = build_domain(d.q, prec);

  RosenExpansion e;
  e.q = d.q;
  const auto cycle = round_block(hp);
  for (int i = 0; i < rounds; ++i) e.digits.insert(e.digits.end(), cycle.begin(), cycle.end());
  e.tail = tau(hp, k - 1) + Real(offset, prec);
  TongWitness w{evaluate(e, prec), 0.0, tong_constant(hp, k).to_double()};

  OrbitCursor cur(d.q, w.x, prec);
  std::deque<std::pair<long, double>> dq;
  for (long m = 0; m <= steps; ++m) {
    if (m > 0 && !cur.step()) break;
    const double theta = cur.theta_cur();
    while (!dq.empty() && dq.back().second >= theta) dq.pop_back();
    dq.emplace_back(m, theta);
    const long start = m - block + 1;
    while (dq.front().first < start) dq.pop_front();
    if (start >= 0) w.block_min = std::max(w.block_min, dq.front().second);
  }
  return w;
}

SimReport verify_borel(const SimConfig& cfg) {
  const double H = hurwitz_constant(cfg.q, cfg.precision).to_double() + 1e-12;
  std::vector<long> checkpoints;
  for (long c : {100L, 1000L, 10000L}) {
    if (c <= cfg.n_iterations) checkpoints.push_back(c);
  }
  if (checkpoints.empty()) checkpoints.push_back(cfg.n_iterations);

  struct Result {
    std::vector<long> hits_at;
    long max_gap = 0;
    long min_window_hits = 0;
  };
  std::vector<Result> per_orbit(static_cast<std::size_t>(cfg.n_orbits));

  run_parallel(cfg.n_orbits, cfg.workers, [&](long orbit) {
    const Precision prec = cfg.orbit_precision(cfg.n_iterations);
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(orbit));
    OrbitCursor cur(cfg.q, random_start(cfg.q, rng, prec), prec);
    Result res;
    res.min_window_hits = -1;
    long hits = 0;
    long last_hit = 0;
    long window_hits = 0;
    std::size_t next_cp = 0;
    for (long n = 1; n <= cfg.n_iterations; ++n) {
      if (!cur.step()) break;
      if (cur.theta_cur() <= H) {
        ++hits;
        ++window_hits;
        res.max_gap = std::max(res.max_gap, n - last_hit);
        last_hit = n;
      }
      if (n % 1000 == 0) {
        res.min_window_hits =
            res.min_window_hits < 0 ? window_hits : std::min(res.min_window_hits, window_hits);
        window_hits = 0;
      }
      if (next_cp < checkpoints.size() && n == checkpoints[next_cp]) {
        res.hits_at.push_back(hits);
        ++next_cp;
      }
    }
    while (res.hits_at.size() < checkpoints.size()) res.hits_at.push_back(hits);
    per_orbit[static_cast<std::size_t>(orbit)] = std::move(res);
  });

  SimReport report;
  report.name = "borel q=" + std::to_string(cfg.q);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    Statistic s;
    s.name = "hits_at_" + std::to_string(checkpoints[i]);
    long fewest = -1;
    long orbits_without = 0;
    bool monotone = true;
    for (const Result& r : per_orbit) {
      const long h = r.hits_at[i];
      fewest = fewest < 0 ? h : std::min(fewest, h);
      if (h <= 0) ++orbits_without;
      if (i > 0 && h < r.hits_at[i - 1]) monotone = false;
    }
    s.estimate = static_cast<double>(fewest);
    s.samples = cfg.n_orbits;
    s.reference = 1.0;
    s.pass = orbits_without == 0 && monotone;
    s.note = "fewest hits over orbits: " + std::to_string(fewest) + "; orbits without a hit: " +
             std::to_string(orbits_without);
    report.statistics.push_back(s);
  }
  Statistic gap;
  gap.name = "max_gap";
  long fewest_window = -1;
  for (const Result& r : per_orbit) {
    gap.estimate = std::max(gap.estimate, static_cast<double>(r.max_gap));
    if (r.min_window_hits >= 0) {
      fewest_window = fewest_window < 0 ? r.min_window_hits : std::min(fewest_window, r.min_window_hits);
    }
  }
  gap.samples = cfg.n_orbits;
  gap.note = "longest stretch between hits (reported only); fewest hits in a 1000-step window: " +
             std::to_string(fewest_window);
  report.statistics.push_back(gap);
  return report;
}

BorelWitness borel_witness(int q, int i, long n_steps) {
  const Precision prec{256 + 4 * n_steps};
  const DomainSpec d = build_domain(q, prec);
  const FixedPointSet fp = fixed_points(d);
  const int period = d.round_length;
  const ExtPoint& target = fp.orbit.at(static_cast<std::size_t>(((i % period) + period) % period));
  const double H = hurwitz_constant(q, prec).to_double();

  OrbitCursor cur(q, target.t, prec);
  BorelWitness w;
  long round_hits = 0;
  for (long n = 1; n <= n_steps; ++n) {
    if (!cur.step()) break;
    ++w.steps;
    if (cur.theta_cur() <= H + 1e-12) {
      ++w.hits;
      ++round_hits;
    }
    if (n % period == 0) {
      if (round_hits == 0) ++w.rounds_without_hit;
      round_hits = 0;
      w.v_gaps.push_back((cur.v() - target.v).to_double());
    }
  }
  return w;
}

SimReport verify_distribution(const SimConfig& cfg, int grid, int t_bins, int thin) {
  if (thin < 1 || grid < 1 || t_bins < 1) throw InvalidParameter("invalid distribution grid");
  const DomainSpec d = build_domain(cfg.q, cfg.precision);
  const OmegaGrid mesh(d, grid, grid);
  const double t_lo = d.strips.front().t_lo.to_double();
  const double t_hi = d.strips.back().t_hi.to_double();

  struct Result {
    std::vector<long> cells;
    std::vector<long> tcounts;
    long outside = 0;
  };
  std::vector<Result> per_orbit(static_cast<std::size_t>(cfg.n_orbits));

  run_parallel(cfg.n_orbits, cfg.workers, [&](long orbit) {
    const long total = cfg.burn_in + cfg.n_iterations;
    const Precision prec = cfg.orbit_precision(total);
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(orbit));
    OrbitCursor cur(cfg.q, random_start(cfg.q, rng, prec), prec);
    Result res{std::vector<long>(mesh.size(), 0), std::vector<long>(static_cast<std::size_t>(t_bins), 0), 0};
    for (long n = 1; n <= total; ++n) {
      if (!cur.step()) break;
      if (n <= cfg.burn_in || (n - cfg.burn_in) % thin != 0) continue;
      const double t = cur.t_double();
      const double v = cur.v_double();
      const long c = mesh.cell(t, v);
      if (c < 0) {
        ++res.outside;
        continue;
      }
      ++res.cells[static_cast<std::size_t>(c)];
      const int tb = std::min(t_bins - 1, static_cast<int>((t - t_lo) / (t_hi - t_lo) * t_bins));
      ++res.tcounts[static_cast<std::size_t>(tb)];
    }
    per_orbit[static_cast<std::size_t>(orbit)] = std::move(res);
  });

  std::vector<long> cells(mesh.size(), 0);
  std::vector<long> tcounts(static_cast<std::size_t>(t_bins), 0);
  long outside = 0;
  for (const Result& r : per_orbit) {
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] += r.cells[i];
    for (std::size_t i = 0; i < tcounts.size(); ++i) tcounts[i] += r.tcounts[i];
    outside += r.outside;
  }
  std::vector<double> tmass;
  for (int b = 0; b < t_bins; ++b) {
    const double a = t_lo + (t_hi - t_lo) * b / t_bins;
    const double e = t_lo + (t_hi - t_lo) * (b + 1) / t_bins;
    tmass.push_back(t_marginal_mass(d, a, e));
  }

  SimReport report;
  report.name = "distribution q=" + std::to_string(cfg.q);
  report.statistics.push_back(chi_square_statistic("chi2_2d", cells, mesh.masses(), outside));
  report.statistics.push_back(chi_square_statistic("chi2_t", tcounts, tmass, outside));
  return report;
}

Statistic verify_measure_preservation(const DomainSpec& d, long n_samples, std::uint64_t seed,
                                      int grid) {
  if (n_samples < 1) throw InvalidParameter("need at least one sample");
  const OmegaGrid mesh(d, grid, grid);
  std::vector<long> cells(mesh.size(), 0);
  long outside = 0;
  RandomStream rng(seed, 0);
  for (long i = 0; i < n_samples; ++i) {
    const ExtPoint p = sample_nu(d, rng);
    const ExtPoint img = natural_extension_step(p, d.lambda).point;
    const long c = mesh.cell(img.t.to_double(), img.v.to_double());
    if (c < 0 || !contains(d, img)) {
      ++outside;
      continue;
    }
    ++cells[static_cast<std::size_t>(c)];
  }
  return chi_square_statistic("measure_preservation", cells, mesh.masses(), outside);
}

ShadowingAudit shadowing_audit(int q, const Real& x0, long n_steps, Precision prec) {
  ShadowingAudit audit;
  OrbitCursor cur(q, x0, prec);
  std::vector<RosenDigit> digits;
  std::vector<double> thetas;
  for (long n = 1; n <= n_steps; ++n) {
    if (!cur.step()) break;
    digits.push_back(cur.digit());
    thetas.push_back(cur.theta_cur());
  }
  audit.steps = static_cast<long>(digits.size());
  const Precision hp{std::max(256L, 4 * n_steps)};
  audit.reconstruction_bits = hp.bits;

  RosenExpansion e;
  e.q = q;
  e.digits = digits;
  e.tail = cur.t();
  const Real y = evaluate(e, hp);

  const RosenExpansion again = expand(y, q, audit.steps, hp, TiePolicy::half_open);
  audit.digits_match = again.digits == digits;

  OrbitCursor exact(q, y, hp);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (!exact.step()) break;
    audit.max_theta_error = std::max(audit.max_theta_error, std::abs(exact.theta_cur() - thetas[i]));
  }
  return audit;
}

}  // namespace rosen
