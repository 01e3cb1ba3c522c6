// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>

#include "isocx/fm_polynomials.hpp"
#include "isocx/matrix.hpp"
#include "isocx/suite.hpp"

using namespace isocx;

namespace {

MatrixFq random_matrix(const Field& k, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MatrixFq m(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = k.element(rng() % k.size());
  return m;
}

void BM_rank_serial(benchmark::State& st) {
  const auto m = random_matrix(Field::quadratic(3), std::size_t(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(rank_fq_serial(m));
}
void BM_rank_parallel(benchmark::State& st) {
  const auto m = random_matrix(Field::quadratic(3), std::size_t(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(rank_fq(m));
}
BENCHMARK(BM_rank_serial)->Arg(128)->Arg(384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_parallel)->Arg(128)->Arg(384)->Unit(benchmark::kMillisecond);

void BM_closure_serial(benchmark::State& st) {
  const auto r = FiniteRing::integers_mod(std::uint32_t(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(category_closure_check_serial(r, 6).counterexamples);
}
void BM_closure_parallel(benchmark::State& st) {
  const auto r = FiniteRing::integers_mod(std::uint32_t(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(category_closure_check(r, 6).counterexamples);
}
BENCHMARK(BM_closure_serial)->Arg(16)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_closure_parallel)->Arg(16)->Arg(30)->Unit(benchmark::kMillisecond);

// case-level parallelism of the suite runner
void BM_suite_jobs(benchmark::State& st) {
  SuiteConfig cfg;
  cfg.suites = {"main", "bar"};
  cfg.primes = {2, 3};
  const auto cases = build_cases(cfg);
  for (auto _ : st) benchmark::DoNotOptimize(run_cases(cases, int(st.range(0)), false).size());
}
BENCHMARK(BM_suite_jobs)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
