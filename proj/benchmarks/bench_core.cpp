#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include <ppmwt/bounds.hpp>
#include <ppmwt/pipeline.hpp>

using namespace ppmwt;

namespace {

void BM_gf_mul_table(benchmark::State& state) {
    const gf::FieldSpec field = gf::FieldSpec::standard(unsigned(state.range(0)));
    RandomStream rng(1);
    const gf::Word a = 1 + rng.below(field.order_mask());
    gf::Word b = 1 + rng.below(field.order_mask());
    for (auto _ : state) {
        b = field.mul(a, b) | 1;
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_gf_mul_table)->Arg(8)->Arg(16);

void BM_gf_mul_carryless(benchmark::State& state) {
    const gf::FieldSpec field = gf::FieldSpec::standard(unsigned(state.range(0)));
    RandomStream rng(1);
    const gf::Word a = 1 + rng.below(field.order_mask());
    gf::Word b = 1 + rng.below(field.order_mask());
    for (auto _ : state) {
        b = field.mul_carryless(a, b) | 1;
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_gf_mul_carryless)->Arg(8)->Arg(32)->Arg(64);

void BM_gf_inv(benchmark::State& state) {
    const gf::FieldSpec field = gf::FieldSpec::standard(unsigned(state.range(0)));
    gf::Word a = 7;
    for (auto _ : state) {
        a = field.inv(a);
        benchmark::DoNotOptimize(a);
        a = (a == 1) ? 7 : a;
    }
}
BENCHMARK(BM_gf_inv)->Arg(8)->Arg(16)->Arg(48);

void BM_rs_encode(benchmark::State& state) {
    const unsigned w = unsigned(state.range(0));
    const unsigned n = (1u << w) - 1;
    const auto spec = rs::RSCodeSpec::make(w, n / 2);
    RandomStream rng(2);
    std::vector<rs::Symbol> message(spec.k);
    for (auto& s : message) s = rng.bits(w);
    for (auto _ : state) {
        auto cw = rs_encode(message, spec);
        benchmark::DoNotOptimize(cw.data());
    }
    state.SetItemsProcessed(state.iterations() * spec.n);
}
BENCHMARK(BM_rs_encode)->Arg(4)->Arg(6)->Arg(8);

void BM_rs_decode_erasures(benchmark::State& state) {
    const unsigned w = unsigned(state.range(0));
    const unsigned n = (1u << w) - 1;
    const auto spec = rs::RSCodeSpec::make(w, n / 2);
    RandomStream rng(3);
    std::vector<rs::Symbol> message(spec.k);
    for (auto& s : message) s = rng.bits(w);
    const auto cw = rs_encode(message, spec);
    rs::ErasureWord received(cw.begin(), cw.end());
    for (unsigned e = 0; e < (n - spec.k) / 2;) {
        const auto pos = rng.below(n);
        if (received[pos].has_value()) {
            received[pos].reset();
            ++e;
        }
    }
    for (auto _ : state) {
        auto out = rs_decode_erasures(received, spec);
        benchmark::DoNotOptimize(out.message);
    }
}
BENCHMARK(BM_rs_decode_erasures)->Arg(4)->Arg(6)->Arg(8);

void BM_pr_error_bound(benchmark::State& state) {
    const std::uint64_t n = std::uint64_t(1) << state.range(0);
    const std::uint64_t k = std::uint64_t(double(n) * 0.9 * 0.05);
    for (auto _ : state) {
        const double v = bounds::pr_error_bound(n, k, 0.95);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_pr_error_bound)->Arg(10)->Arg(16)->Arg(25);

void BM_delta_bound(benchmark::State& state) {
    const auto params = pipeline::SchemeParams::make(0.8, 1e-5, 13, 410, 1300);
    const auto budget = bounds::derive_budget(params, 0.2, 0.5, 0.045);
    for (auto _ : state) {
        const auto report = bounds::delta_bound(params, budget);
        benchmark::DoNotOptimize(report.delta_bound);
    }
}
BENCHMARK(BM_delta_bound);

void BM_optimize(benchmark::State& state) {
    const double energy = std::pow(10.0, -double(state.range(0)));
    for (auto _ : state) {
        const auto result = bounds::optimize(0.8, energy, 1e-6, 0.05);
        benchmark::DoNotOptimize(result.feasible);
    }
}
BENCHMARK(BM_optimize)->Arg(5)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_run_trials(benchmark::State& state) {
    const double q = 0.3;
    const unsigned w = unsigned(state.range(0));
    const std::uint64_t n = (1ull << w) - 1;
    const auto k = std::uint64_t(std::floor(0.9 * (1 - q) * double(n)));
    const pipeline::Scheme scheme(
        pipeline::SchemeParams::from_pulse_energy(0.8, -std::log(q) / 0.8, w, k, 0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const auto stats = scheme.run_trials(1000, seed++);
        benchmark::DoNotOptimize(stats.errors);
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_run_trials)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
