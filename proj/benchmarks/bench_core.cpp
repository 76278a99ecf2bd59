#include <cmath>

#include <benchmark/benchmark.h>

#include "schauder/expr.hpp"
#include "schauder/holder.hpp"
#include "schauder/operator_spec.hpp"
#include "schauder/potential.hpp"
#include "schauder/solver.hpp"

using namespace schauder;

namespace {

OperatorSpec ou_spec(int d) {
    OperatorText t;
    t.d = d;
    t.a.assign(static_cast<std::size_t>(d), std::vector<std::string>(static_cast<std::size_t>(d), "0"));
    for (int i = 0; i < d; ++i) {
        t.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = "1";
        t.b.push_back("-x" + std::to_string(i + 1));
    }
    t.c = "1";
    t.f = "exp(-x1^2)*cos(t)";
    t.T = -1.0;
    t.S = 0.0;
    return build_spec(t);
}

void BM_ExprEval(benchmark::State& state) {
    const Expr e = parse_expr("1 + 0.5*(sqrt(1 + x1^2) - 1) + 3*(1 + sin(6*t))");
    const std::array<double, 1> x = {0.3};
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.eval(t, x));
        t += 1e-6;
    }
}
BENCHMARK(BM_ExprEval);

void BM_GaussianConvolve(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const SpaceGrid g(d, 4.0, static_cast<int>(state.range(1)));
    const GridFn u = sample(g, [](const Point& x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); });
    const SmallMat A = 0.05 * SmallMat::Identity(d, d);
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_convolve(u, A).values.data());
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_GaussianConvolve)->Args({1, 257})->Args({2, 65})->Args({2, 129})->Unit(benchmark::kMicrosecond);

void BM_HolderSeminorm(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const SpaceGrid g(d, 2.0, static_cast<int>(state.range(1)));
    const GridFn u = sample(g, [](const Point& x) { return std::sqrt(std::abs(x[0])) + std::sin(3.0 * x[1]); });
    for (auto _ : state) benchmark::DoNotOptimize(holder_seminorm(u, 0.5));
}
BENCHMARK(BM_HolderSeminorm)->Args({1, 257})->Args({2, 65})->Unit(benchmark::kMicrosecond);

// One full backward march; the per-step cost is the total divided by n_time.
void BM_SolveCauchy(benchmark::State& state) {
    CauchyProblem p;
    const int d = static_cast<int>(state.range(0));
    p.spec = ou_spec(d);
    p.grid = SpaceGrid(d, 5.0, static_cast<int>(state.range(1)));
    p.g = sample(p.grid, [](const Point& x) { return std::exp(-x[0] * x[0]); });
    p.n_time = 32;
    for (auto _ : state) benchmark::DoNotOptimize(solve_cauchy(p).u.slices.back().values.data());
    state.counters["steps"] = p.n_time;
}
BENCHMARK(BM_SolveCauchy)->Args({1, 129})->Args({2, 65})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
