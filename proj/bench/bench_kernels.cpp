#include "ellcft/elliptic.hpp"
#include "ellcft/lattice.hpp"
#include "ellcft/modforms.hpp"
#include "ellcft/qseries.hpp"

#include <benchmark/benchmark.h>

using namespace ellcft;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void BM_E8Theta(benchmark::State& s) {
    const Rational ord = make_rational(s.range(1), 1);
    for (auto _ : s) benchmark::DoNotOptimize(lattice_theta_series(e8_gram(), ord, exec_of(s)));
}
BENCHMARK(BM_E8Theta)->ArgsProduct({{0, 1}, {6, 10}})->Unit(benchmark::kMillisecond);

void BM_E8Character(benchmark::State& s) {
    for (auto _ : s)
        benchmark::DoNotOptimize(
            voa_character_series(e8_gram(), RatVector(8, Rational(0)), {}, make_rational(8, 1), exec_of(s)));
}
BENCHMARK(BM_E8Character)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PGrid(benchmark::State& s) {
    std::vector<cplx> zs;
    for (int a = 0; a < 32; ++a)
        for (int b = 0; b < 32; ++b) zs.emplace_back(0.01 + a / 32.0, 0.01 + b / 32.0);
    for (auto _ : s) benchmark::DoNotOptimize(p_eval_grid({2, 1, 0, 0}, zs, cplx(0.1, 1.1), 1e-12, exec_of(s)));
}
BENCHMARK(BM_PGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DeltaFromEisenstein(benchmark::State& s) {
    const Rational ord = make_rational(s.range(0), 1);
    for (auto _ : s) {
        FracSeries g4 = eisenstein_series(4, 0, 0, ord), g6 = eisenstein_series(6, 0, 0, ord);
        benchmark::DoNotOptimize(pow(scale(g4, Rational(20)), 3) - scale(pow(scale(g6, Rational(7)), 2), Rational(3)));
    }
}
BENCHMARK(BM_DeltaFromEisenstein)->Arg(31)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_FormEval(benchmark::State& s) {
    FormId j = parse_form("j");
    for (auto _ : s) benchmark::DoNotOptimize(form_eval(j, cplx(0.1, 1.05)));
}
BENCHMARK(BM_FormEval);

}  // namespace

BENCHMARK_MAIN();
