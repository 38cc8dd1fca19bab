#include <benchmark/benchmark.h>

#include <acgm/instances.hpp>
#include <acgm/operators.hpp>
#include <acgm/problem.hpp>
#include <acgm/rng.hpp>
#include <acgm/solvers.hpp>

namespace {

acgm::Vector gaussian_vector(int n, std::uint64_t seed) {
  acgm::SplitMix64 rng(seed);
  acgm::Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.next_gaussian();
  return v;
}

}  // namespace

static void BM_ProxL1(benchmark::State& state) {
  const acgm::Vector x = gaussian_vector(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(acgm::prox_l1(x, 0.1));
  }
}
BENCHMARK(BM_ProxL1)->Arg(1 << 10)->Arg(1 << 14);

static void BM_ProxHuberRofDual(benchmark::State& state) {
  const acgm::Vector p = gaussian_vector(static_cast<int>(state.range(0)), 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(acgm::prox_huber_rof_dual(p, 0.125, 0.1, 0.001));
  }
}
BENCHMARK(BM_ProxHuberRofDual)->Arg(1 << 10)->Arg(1 << 14);

static void BM_BlurForward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const acgm::LinearOperator blur = acgm::gaussian_blur_operator(n, n);
  const acgm::Vector x = gaussian_vector(n * n, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(blur.forward(x));
  }
}
BENCHMARK(BM_BlurForward)->Arg(64)->Arg(256);

static void BM_HaarForward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const acgm::LinearOperator haar = acgm::haar_operator(n, n);
  const acgm::Vector x = gaussian_vector(n * n, 14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar.forward(x));
  }
}
BENCHMARK(BM_HaarForward)->Arg(64)->Arg(256);

static void BM_DiscreteGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const acgm::LinearOperator grad = acgm::discrete_gradient_operator(n, n);
  const acgm::Vector x = gaussian_vector(n * n, 15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grad.forward(x));
  }
}
BENCHMARK(BM_DiscreteGradient)->Arg(64)->Arg(256);

// Solver benchmarks re-initialize per loop body and run a short fixed burst,
// so every measurement covers the same (non-converged) phase of the method.
static void BM_AcgmEsBurst(benchmark::State& state) {
  const acgm::CompositeProblem p =
      acgm::random_lasso(static_cast<int>(state.range(0)) / 2,
                         static_cast<int>(state.range(0)), 0.1, 21);
  acgm::LineSearchParams params;
  params.l0 = p.lf_hint.value_or(1.0);
  for (auto _ : state) {
    acgm::AcgmEsState s = acgm::acgm_es_init(p.x0, params.l0);
    for (int i = 0; i < 10; ++i) acgm::acgm_es_iteration(p, params, s);
    benchmark::DoNotOptimize(s.x);
  }
}
BENCHMARK(BM_AcgmEsBurst)->Arg(64)->Arg(256);

static void BM_AcgmExBurst(benchmark::State& state) {
  const acgm::CompositeProblem p =
      acgm::random_lasso(static_cast<int>(state.range(0)) / 2,
                         static_cast<int>(state.range(0)), 0.1, 22);
  acgm::LineSearchParams params;
  params.l0 = p.lf_hint.value_or(1.0);
  for (auto _ : state) {
    acgm::AcgmExState s = acgm::acgm_ex_init(p.x0, params.l0, p);
    for (int i = 0; i < 10; ++i) acgm::acgm_ex_iteration(p, params, s);
    benchmark::DoNotOptimize(s.x);
  }
}
BENCHMARK(BM_AcgmExBurst)->Arg(64)->Arg(256);

static void BM_AmgsBurst(benchmark::State& state) {
  const acgm::CompositeProblem p =
      acgm::random_lasso(static_cast<int>(state.range(0)) / 2,
                         static_cast<int>(state.range(0)), 0.1, 23);
  acgm::LineSearchParams params;
  params.l0 = p.lf_hint.value_or(1.0);
  for (auto _ : state) {
    acgm::AmgsState s = acgm::amgs_init(p.x0, params.l0);
    for (int i = 0; i < 10; ++i) acgm::amgs_iteration(p, params, s);
    benchmark::DoNotOptimize(s.x);
  }
}
BENCHMARK(BM_AmgsBurst)->Arg(64)->Arg(256);

static void BM_DeblurRun(benchmark::State& state) {
  const acgm::CompositeProblem p = acgm::make_deblur_benchmark(32, 32, 31);
  acgm::SolverConfig config;
  config.search.l0 = p.lf_hint.value_or(2.0);
  config.search.r_d = std::sqrt(0.9);
  const acgm::Budget budget = acgm::Budget::wtu(50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(acgm::run(acgm::MethodKind::acgm_ex, p, config, budget));
  }
}
BENCHMARK(BM_DeblurRun);

BENCHMARK_MAIN();
