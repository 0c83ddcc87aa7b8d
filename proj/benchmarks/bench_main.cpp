#include <benchmark/benchmark.h>

#include "wloop/freeprob.hpp"
#include "wloop/gauge.hpp"
#include "wloop/loop_text.hpp"
#include "wloop/mc.hpp"
#include "wloop/solver.hpp"

using namespace wloop;

// Fresh memo every iteration, so this is the full cost of one polynomial.
static void BM_SolverPolynomial(benchmark::State& st, const char* spec, int kmax) {
    Loop l = parse_loop(spec, 2);
    for (auto _ : st) {
        MleSolver s;
        benchmark::DoNotOptimize(s.polynomial(l, kmax));
        st.counters["memo"] = static_cast<double>(s.stats().memo_entries);
    }
}
BENCHMARK_CAPTURE(BM_SolverPolynomial, rect_2x2, "rect 2 2", 6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolverPolynomial, rect_3x2, "rect 3 2", 8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolverPolynomial, commutator_1, "commutator 1", 6)->Unit(benchmark::kMillisecond);

static void BM_SolverNoPrune(benchmark::State& st) {
    Loop l = parse_loop("rect 2 2", 2);
    SolverConfig cfg;
    cfg.area_pruning = false;
    for (auto _ : st) {
        MleSolver s(cfg);
        benchmark::DoNotOptimize(s.polynomial(l, 4));
    }
}
BENCHMARK(BM_SolverNoPrune)->Unit(benchmark::kMillisecond);

static void BM_SolverThreeDim(benchmark::State& st) {
    SolverConfig cfg;
    cfg.dim = 3;
    Loop l = parse_loop("rect 1 1", 3);
    for (auto _ : st) {
        MleSolver s(cfg);
        benchmark::DoNotOptimize(s.coefficient(l, static_cast<int>(st.range(0))));
    }
}
BENCHMARK(BM_SolverThreeDim)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_WordMoment(benchmark::State& st) {
    FreeWord c{{{0, 1}, {1, 1}, {0, -1}, {1, -1}}};
    FreeWord w = c.power(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        CumulantTable t;
        benchmark::DoNotOptimize(word_moment(w, t, 32));
    }
}
BENCHMARK(BM_WordMoment)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

static void BM_EnumerateNC(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_nc(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_EnumerateNC)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_MetropolisStep(benchmark::State& st) {
    McConfig cfg;
    cfg.N = static_cast<int>(st.range(0));
    cfg.burn_in = 100;
    cfg.thin = 1;
    PlaquetteChain chain(cfg, 0);
    chain.next();
    for (auto _ : st) benchmark::DoNotOptimize(chain.next());
}
BENCHMARK(BM_MetropolisStep)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
