#include <benchmark/benchmark.h>

#include "rosen/core.hpp"
#include "rosen/domain.hpp"
#include "rosen/montecarlo.hpp"
#include "rosen/spectrum.hpp"

using namespace rosen;

namespace {

const Precision P{256};

void BM_RosenStep(benchmark::State& state) {
  const Real lam = lambda(8, P);
  Real x = Real::pi(P) - 3;
  for (auto _ : state) {
    StepResult s = rosen_step(x, lam);
    x = s.next.is_zero() ? Real::pi(P) - 3 : std::move(s.next);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_RosenStep);

void BM_OrbitCursor(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  OrbitCursor cursor(q, Real::pi(P) - 3, P);
  for (auto _ : state) {
    if (!cursor.step()) cursor = OrbitCursor(q, Real::pi(P) - 3, P);
    benchmark::DoNotOptimize(cursor.t_double());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_OrbitCursor)->Arg(8)->Arg(9);

void BM_Expand(benchmark::State& state) {
  const long n = state.range(0);
  const Precision prec{std::max(256L, 4 * n)};
  const Real x = exp(Real(1L, prec)) / 10;
  for (auto _ : state) benchmark::DoNotOptimize(expand(x, 8, n, prec));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Expand)->Arg(50)->Arg(500);

void BM_BuildDomain(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_domain(q, P));
}
BENCHMARK(BM_BuildDomain)->Arg(8)->Arg(9)->Arg(16)->Arg(17);

void BM_NuClosed(benchmark::State& state) {
  const DomainSpec d = build_domain(8, P);
  for (auto _ : state) benchmark::DoNotOptimize(nu_Ak_closed(d, 2));
}
BENCHMARK(BM_NuClosed);

void BM_NuQuadrature(benchmark::State& state) {
  const DomainSpec d = build_domain(static_cast<int>(state.range(0)), P);
  for (auto _ : state) benchmark::DoNotOptimize(nu_Ak_quadrature(d, 2));
}
BENCHMARK(BM_NuQuadrature)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_MeasureOmega(benchmark::State& state) {
  const DomainSpec d = build_domain(static_cast<int>(state.range(0)), P);
  for (auto _ : state) benchmark::DoNotOptimize(measure_omega(d));
}
BENCHMARK(BM_MeasureOmega)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_Inverse(benchmark::State& state) {
  const DomainSpec d = build_domain(9, P);
  RandomStream rng(5, 0);
  std::vector<ExtPoint> images;
  for (int i = 0; i < 256; ++i) images.push_back(natural_extension_step(sample_nu(d, rng), d.lambda).point);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(natural_extension_inverse(d, images[i++ % images.size()]));
}
BENCHMARK(BM_Inverse);

void BM_BlockFrequency(benchmark::State& state) {
  SimConfig cfg;
  cfg.q = 8;
  cfg.n_iterations = 100000;
  cfg.burn_in = 0;
  cfg.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(block_event_frequency(cfg, 1));
  state.SetItemsProcessed(state.iterations() * cfg.n_iterations);
}
BENCHMARK(BM_BlockFrequency)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
