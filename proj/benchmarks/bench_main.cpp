#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dfc/charpoly.hpp"
#include "dfc/coeffs.hpp"
#include "dfc/extremal.hpp"
#include "dfc/margin.hpp"
#include "dfc/trigpoly.hpp"

namespace {

dfc::CoefficientVector random_unit_sum(std::mt19937_64& rng, int period,
                                       int depth) {
  std::uniform_real_distribution<double> entry(-1.0, 2.0);
  std::vector<double> a(static_cast<std::size_t>(depth));
  while (true) {
    double sum = 0.0;
    for (double& v : a) sum += (v = entry(rng));
    if (std::abs(sum) < 0.25) continue;
    for (double& v : a) v /= sum;
    break;
  }
  return {period, depth, std::move(a), 0.0};
}

void BM_margin_t1_closed(benchmark::State& state) {
  const auto coeffs =
      dfc::fejer_coeffs_t1(static_cast<int>(state.range(0)), 1e-3);
  for (auto _ : state)
    benchmark::DoNotOptimize(dfc::margin_t1(coeffs).mu_tilde);
}
BENCHMARK(BM_margin_t1_closed)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_margin_t2_closed(benchmark::State& state) {
  const auto coeffs =
      dfc::fejer_coeffs_t2(static_cast<int>(state.range(0)), 1e-3);
  for (auto _ : state)
    benchmark::DoNotOptimize(dfc::margin_t2(coeffs).mu_tilde);
}
BENCHMARK(BM_margin_t2_closed)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_margin_curve(benchmark::State& state) {
  const auto coeffs =
      dfc::fejer_coeffs_t1(static_cast<int>(state.range(0)), 1e-3);
  for (auto _ : state)
    benchmark::DoNotOptimize(dfc::margin_curve(coeffs, 1).mu_tilde);
}
BENCHMARK(BM_margin_curve)->Arg(2)->Arg(8);

void BM_margin_bisect(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto coeffs = random_unit_sum(rng, 1, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(dfc::margin_bisect(coeffs, 1));
}
BENCHMARK(BM_margin_bisect)->Arg(2)->Arg(4)->Arg(8);

void BM_schur_stable(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto coeffs = random_unit_sum(rng, 2, static_cast<int>(state.range(0)));
  const auto p = dfc::build_char_poly(coeffs, 2, -0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(dfc::schur_stable(p).stable);
}
BENCHMARK(BM_schur_stable)->Arg(4)->Arg(8)->Arg(16);

void BM_roots(benchmark::State& state) {
  std::mt19937_64 rng(9);
  const auto coeffs = random_unit_sum(rng, 2, static_cast<int>(state.range(0)));
  const auto p = dfc::build_char_poly(coeffs, 2, -0.5);
  for (auto _ : state) benchmark::DoNotOptimize(dfc::roots(p).size());
}
BENCHMARK(BM_roots)->Arg(4)->Arg(8)->Arg(16);

void BM_constraint_zeros_t1(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto coeffs = random_unit_sum(rng, 1, static_cast<int>(state.range(0)));
  const dfc::ConjugateTrigPair pair(dfc::TrigMode::T1, coeffs.a);
  for (auto _ : state)
    benchmark::DoNotOptimize(dfc::constraint_zeros_t1(pair).points.size());
}
BENCHMARK(BM_constraint_zeros_t1)->Arg(4)->Arg(8)->Arg(16);

void BM_grid_search_t1(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(dfc::grid_search_t1(2, 1e-2).best_value);
}
BENCHMARK(BM_grid_search_t1);

}  // namespace

BENCHMARK_MAIN();
