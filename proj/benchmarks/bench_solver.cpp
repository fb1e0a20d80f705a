#include <benchmark/benchmark.h>

#include "secrecy/secrecy.hpp"

using namespace secrecy;

namespace {

ChannelSet two_user() {
  Matrix h1(2, 2), h2(2, 2), g(1, 2);
  h1 << 1.0, -0.5, 0.5, 2.0;
  h2 << -0.3, 1.0, 2.0, -0.4;
  g << 0.8, -1.6;
  return ChannelSet({h1, h2}, g);
}

Matrix random_hermitian_pd(Eigen::Index n, unsigned seed) {
  std::srand(seed);
  const Matrix a = Matrix::Random(n, n);
  return a * a.adjoint() + Matrix::Identity(n, n);
}

void BM_LogDet(benchmark::State& state) {
  const Matrix m = random_hermitian_pd(state.range(0), 7);
  for (auto _ : state) benchmark::DoNotOptimize(numerics::log_det_posdef(m));
}
BENCHMARK(BM_LogDet)->Arg(2)->Arg(4)->Arg(8);

void BM_ClosedFormQ1(benchmark::State& state) {
  const Matrix r = random_hermitian_pd(2, 3);
  const Matrix s = random_hermitian_pd(4, 4);
  const Matrix h = Matrix::Random(2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_q1(r, s, h, 0.5));
}
BENCHMARK(BM_ClosedFormQ1);

void BM_BsmmInner(benchmark::State& state) {
  const ChannelSet ch = two_user();
  const WeightVector w({0.5, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(bsmm_inner(ch, w, EncodingOrder::identity(2), 0.3, 1.0, SolverConfig{}));
  }
}
BENCHMARK(BM_BsmmInner)->Unit(benchmark::kMillisecond);

void BM_SolveWsr(benchmark::State& state) {
  const ChannelSet ch = two_user();
  const WeightVector w({0.5, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_wsr(ch, w, EncodingOrder::identity(2), PowerConstraint{1.0}));
  }
}
BENCHMARK(BM_SolveWsr)->Unit(benchmark::kMillisecond);

void BM_RegionSweep(benchmark::State& state) {
  const ChannelSet ch = two_user();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_weights(ch, PowerConstraint{1.0}, SolverConfig{}, 0.25, Scheme::kSecrecy, 1));
  }
}
BENCHMARK(BM_RegionSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
