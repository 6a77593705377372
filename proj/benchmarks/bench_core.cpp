// Microbenchmarks for the hot paths: exceptional-class enumeration,
// resolution-polynomial construction, Dynkin verification, and per-point
// sphere sampling.  These guard the acceptance-time budgets (the class
// enumeration and the Gauss-Bonnet integral dominate the battery's
// runtime), so a regression shows up here before it trips a budget.

#include <benchmark/benchmark.h>

#include <ale/ak_sphere.hpp>
#include <ale/dk_sphere.hpp>
#include <ale/lattice.hpp>
#include <ale/rational.hpp>
#include <ale/tyurina.hpp>

#include <vector>

namespace {

void BM_EnumerateLines(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ale::ModelPtr m = ale::make_blown_up_plane(n);
    for (auto _ : state) {
        auto lines = ale::enumerate_lines(m);
        benchmark::DoNotOptimize(lines);
    }
}
BENCHMARK(BM_EnumerateLines)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TyurinaData(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    std::vector<ale::Rational> roots;
    for (int i = 1; i <= k; ++i) roots.emplace_back(2L * i - 1, 3L);
    for (auto _ : state) {
        auto data = ale::tyurina_data(roots);
        benchmark::DoNotOptimize(data);
    }
}
BENCHMARK(BM_TyurinaData)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_VerifyDynkinE8(benchmark::State& state) {
    const auto basis = ale::orthogonal_root_basis("E", 8);
    for (auto _ : state) {
        auto rep = ale::verify_dynkin(basis, "E8");
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_VerifyDynkinE8)->Unit(benchmark::kMicrosecond);

void BM_AkSphereSample(benchmark::State& state) {
    const ale::ModuliA m({-2.0, -0.5, 0.5, 2.0});
    const double z = 0.5 * (m.central_low() + m.central_high());
    double theta = 0.1;
    for (auto _ : state) {
        theta += 1e-3;
        auto s = ale::sphere_metric(m, z, theta);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_AkSphereSample)->Unit(benchmark::kMicrosecond);

void BM_DkConformalChart(benchmark::State& state) {
    const ale::ModuliD m({1.0, 2.0, 3.0, 4.0});
    const int component = m.central_component();
    const auto interval = m.compact_intervals()[component];
    const double s0 = interval.first + 0.4 * (interval.second - interval.first);
    double theta = 0.3;
    for (auto _ : state) {
        theta += 1e-3;
        auto s = ale::conformal_chart(m, component, s0, theta);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_DkConformalChart)->Unit(benchmark::kMicrosecond);

void BM_DkGaussBonnet(benchmark::State& state) {
    const ale::ModuliD m({1.0, 2.0, 3.0, 4.0});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto gb = ale::total_curvature(m, m.central_component(), n, n);
        benchmark::DoNotOptimize(gb);
    }
}
BENCHMARK(BM_DkGaussBonnet)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
