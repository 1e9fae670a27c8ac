#include <benchmark/benchmark.h>

#include "numindex/constants.hpp"
#include "numindex/detail/rng.hpp"
#include "numindex/radii.hpp"
#include "numindex/theorem_lab.hpp"

using namespace numindex;

namespace {

Operator random_real_op(std::size_t m, detail::Rng& rng) {
  Operator T = Operator::zero(m, Field::Real);
  for (cplx& e : T.data) e = {rng.gaussian(), 0.0};
  return T;
}

void BM_ComputeMp(benchmark::State& state) {
  const double p = state.range(0) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_Mp(p).value);
  }
}
BENCHMARK(BM_ComputeMp)->Arg(13)->Arg(25)->Arg(60);

void BM_OpNorm(benchmark::State& state) {
  const std::size_t m = std::size_t(state.range(0));
  const LpSpace space = LpSpace::uniform(m, 2.7);
  detail::Rng rng(1, 0);
  const Operator T = random_real_op(m, rng);
  SolverConfig cfg;
  cfg.restarts = 16;
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(op_norm(space, T, cfg).value);
  }
}
BENCHMARK(BM_OpNorm)->Arg(2)->Arg(4)->Arg(8);

void BM_NumRadius(benchmark::State& state) {
  const std::size_t m = std::size_t(state.range(0));
  const LpSpace space = LpSpace::uniform(m, 2.7);
  detail::Rng rng(2, 0);
  const Operator T = random_real_op(m, rng);
  SolverConfig cfg;
  cfg.restarts = 16;
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(num_radius(space, T, cfg).value);
  }
}
BENCHMARK(BM_NumRadius)->Arg(2)->Arg(4)->Arg(8);

void BM_SignPatternMax(benchmark::State& state) {
  const std::size_t m = std::size_t(state.range(0));
  const LpSpace space = LpSpace::uniform(m, 3.0);
  detail::Rng rng(3, 0);
  std::vector<double> amp(m), alpha(m * m);
  for (double& t : amp) t = 0.1 + rng.uniform();
  for (double& t : alpha) t = rng.gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sign_pattern_max(space, amp, alpha).value);
  }
}
BENCHMARK(BM_SignPatternMax)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_Brute2dOracle(benchmark::State& state) {
  const LpSpace space = LpSpace::uniform(2, 2.5);
  detail::Rng rng(4, 0);
  const Operator T = random_real_op(2, rng);
  const Brute2dOracle oracle(space, std::size_t(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.value(T, Objective::NumRadius));
  }
}
BENCHMARK(BM_Brute2dOracle)->Arg(10000)->Arg(100000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
