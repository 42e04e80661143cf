#include <benchmark/benchmark.h>

#include "nqd/bar.hpp"
#include "nqd/chern.hpp"
#include "nqd/corpus.hpp"
#include "nqd/duality.hpp"
#include "nqd/presentation.hpp"
#include "nqd/quadratic.hpp"
#include "nqd/subspace.hpp"

using namespace nqd;

static void BM_KernelRandomRational(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Matrix m(n, n + 3);
  std::uint64_t x = 12345;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n + 3; ++j) {
      x = x * 6364136223846793005ULL + 1442695040888963407ULL;
      m.at(i, j) = Scalar(static_cast<long long>(x >> 60) - 8);
    }
  for (auto _ : state) benchmark::DoNotOptimize(kernel(m).dim());
}
BENCHMARK(BM_KernelRandomRational)->Arg(16)->Arg(32)->Arg(64);

static void BM_QuadraticDualHilbert(benchmark::State& state) {
  const std::size_t degree = static_cast<std::size_t>(state.range(0));
  const NQPresentation p = enveloping(sl2());
  for (auto _ : state) {
    const QuadraticAlgebra b = quadratic_dual(p.underlying());
    benchmark::DoNotOptimize(hilbert(quadratic_dual(b), degree));
  }
}
BENCHMARK(BM_QuadraticDualHilbert)->DenseRange(3, 5);

static void BM_SaturationCounterexample(benchmark::State& state) {
  const std::size_t slack = static_cast<std::size_t>(state.range(0));
  const NQPresentation p = pbw_counterexample();
  for (auto _ : state) benchmark::DoNotOptimize(filtration_dims(p, 4, slack).graded);
}
BENCHMARK(BM_SaturationCounterexample)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_KoszulWindow(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const QuadraticAlgebra a = enveloping(heisenberg3()).underlying();
  for (auto _ : state) benchmark::DoNotOptimize(koszul_verdict(a, n).koszul);
}
BENCHMARK(BM_KoszulWindow)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_BarSquareZero(benchmark::State& state) {
  const std::size_t m = static_cast<std::size_t>(state.range(0));
  const CdgAlgebra psi = dualize(weyl());
  for (auto _ : state) {
    const BarComplex bar(psi, m);
    benchmark::DoNotOptimize(check_square_zero(bar).ok);
  }
}
BENCHMARK(BM_BarSquareZero)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

static void BM_ChernInvariance(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const CdgAlgebra psi = matrix_connection_fixture();
  const TraceSpace c(psi, 2 * n + 1);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const CdgAlgebra t = twist(psi, random_degree_one(psi.base(), seed++));
    benchmark::DoNotOptimize(chern(t, c, n).representative);
  }
}
BENCHMARK(BM_ChernInvariance)->Arg(1)->Arg(2);

static void BM_Transgression(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const CdgAlgebra psi = matrix_connection_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(verify_transgression(psi, n).ok);
}
BENCHMARK(BM_Transgression)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_CsComposite(benchmark::State& state) {
  const CdgAlgebra psi = matrix_connection_fixture();
  const auto [m1, m2] = random_morphism_pair(psi, 7);
  for (auto _ : state) {
    const TwoTermMorphism a = cs_morphism(m1, 2), b = cs_morphism(m2, 2);
    benchmark::DoNotOptimize(same_c2_morphism(cs_morphism(compose(m2, m1), 2), c2_compose(b, a)));
  }
}
BENCHMARK(BM_CsComposite)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
