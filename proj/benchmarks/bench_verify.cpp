#include <benchmark/benchmark.h>

#include "setbound/certify.hpp"
#include "setbound/interval_matrix.hpp"
#include "setbound/verifier.hpp"

using namespace setbound;

namespace {

Network net_2x(std::size_t hidden) {
  const std::size_t dims[] = {2, hidden, 2};
  return generate_network(7, dims, Activation::tanh);
}

VerificationProblem problem(Mode mode, Domain domain, std::size_t k) {
  VerificationProblem p{net_2x(5), Box::cube(2, 0, 1), Box::cube(2, -100, 100)};
  p.mode = mode;
  p.domain = domain;
  p.grid = {k};
  p.threads = 1;
  return p;
}

void BM_Boundary(benchmark::State& state) {
  const auto p = problem(Mode::boundary, static_cast<Domain>(state.range(1)), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify(p));
  state.counters["cells"] = static_cast<double>(verify(p).stats.cells);
}
BENCHMARK(BM_Boundary)->ArgsProduct({{25, 100, 400}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Full(benchmark::State& state) {
  const auto p = problem(Mode::full, static_cast<Domain>(state.range(1)), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify(p));
  state.counters["cells"] = static_cast<double>(verify(p).stats.cells);
}
BENCHMARK(BM_Full)->ArgsProduct({{25, 100}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_ExtractSubset(benchmark::State& state) {
  const std::size_t dims[] = {2, 7, 2};
  const Network net = generate_network(3, dims, Activation::tanh);
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extract_subset(net, Box::cube(2, -1, 1), {k, k}, 1));
}
BENCHMARK(BM_ExtractSubset)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_JacobianInterval(benchmark::State& state) {
  const Network net = net_2x(static_cast<std::size_t>(state.range(0)));
  const Box cell = Box::cube(2, 0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_interval(net, cell));
}
BENCHMARK(BM_JacobianInterval)->Arg(5)->Arg(50);

void BM_IntervalDet(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  IntervalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = (i == j ? 2.0 : 0.0) + 0.1 * static_cast<double>(i + 2 * j);
      m(i, j) = Interval(v, v + 0.01);
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(interval_det(m));
}
BENCHMARK(BM_IntervalDet)->DenseRange(2, 6);

}  // namespace

BENCHMARK_MAIN();
