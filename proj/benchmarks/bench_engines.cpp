#include <benchmark/benchmark.h>

#include "iepoly/coeffs.hpp"
#include "iepoly/theorems.hpp"

using namespace iepoly;

static void BM_truncated_1p3M(benchmark::State& state) {
    Triple t = make_triple(9, 11, 16384); // degree 1,310,640
    for (auto _ : state) {
        CoeffResult res = coeff_vector(t, Engine::truncated);
        benchmark::DoNotOptimize(res.set_min);
    }
}
BENCHMARK(BM_truncated_1p3M)->Unit(benchmark::kMillisecond);

static void BM_oracle_1p3M(benchmark::State& state) {
    Triple t = make_triple(9, 11, 16384);
    for (auto _ : state) {
        CoeffResult res = coeff_vector(t, Engine::oracle);
        benchmark::DoNotOptimize(res.set_min);
    }
}
BENCHMARK(BM_oracle_1p3M)->Unit(benchmark::kMillisecond);

static void BM_coeff_at_small(benchmark::State& state) {
    Triple t = make_triple(97, 991, 9973);
    Int m = t.f_deg / 2;
    for (auto _ : state)
        benchmark::DoNotOptimize(coeff_at(t, m));
}
BENCHMARK(BM_coeff_at_small);

static void BM_coeff_at_huge_R(benchmark::State& state) {
    // R with tens of thousands of decimal digits; the query stays O(p)
    static const Thm1Certificate cert = [] {
        Thm1Options opts;
        opts.slack_exponent = 3;
        opts.min_r_digits = 10000;
        return thm1_construct(5, 7, 3, 1, Rational::parse("0.05"), opts);
    }();
    static const Triple big = [] {
        Int R;
        mpz_pow_ui(R.get_mpz_t(), cert.r.get_mpz_t(), cert.c.get_ui());
        return make_triple(cert.P, cert.Q, R);
    }();
    for (auto _ : state)
        benchmark::DoNotOptimize(coeff_at(big, cert.witness_plus));
}
BENCHMARK(BM_coeff_at_huge_R)->Unit(benchmark::kMillisecond);

static void BM_window_scan_flat21(benchmark::State& state) {
    Triple t = make_triple(9, 11, Int(1) << 30); // degree ~8.6e10
    for (auto _ : state) {
        CoeffResult res = coeff_set_scan(t);
        benchmark::DoNotOptimize(res.set_min);
    }
}
BENCHMARK(BM_window_scan_flat21)->Unit(benchmark::kMillisecond);

static void BM_dlog_prime_power(benchmark::State& state) {
    auto m = PrimePowerModulus::make(11, 7);
    Int target = (m.value - 1) / 2;
    for (auto _ : state)
        benchmark::DoNotOptimize(dlog_prime_power(2, target, m));
}
BENCHMARK(BM_dlog_prime_power);

BENCHMARK_MAIN();
