#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sshc/batch.hpp"
#include "sshc/flip_analytics.hpp"
#include "sshc/harvest_compare.hpp"
#include "sshc/transient_sim.hpp"

using namespace sshc;

namespace {

const PiezoSource kSrc{40e-6, 100.0, 10e-9, std::nullopt};
const RectifierStage kStage{0.2, FixedVoltage{2.0}};

std::vector<double> log_axis(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 0.01 * std::pow(1e5, static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

std::vector<SimConfig> batch_configs(std::size_t n) {
    std::vector<SimConfig> out;
    for (const double r : log_axis(n)) {
        SimConfig cfg = default_sim_config();
        cfg.sshc->cap_ct = r * cfg.src.cap_cp;
        cfg.n_cycles = 4;
        cfg.record_waveform = false;
        out.push_back(cfg);
    }
    return out;
}

void BM_SweepCt(benchmark::State& st) {
    const auto axis = log_axis(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sweep_ct_ratio(kSrc, kStage, axis));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SweepCtSerial(benchmark::State& st) {
    const auto axis = log_axis(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(serial::sweep_ct_ratio(kSrc, kStage, axis));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_FlipSeries(benchmark::State& st) {
    const FlipRatios r = FlipRatios::from_ct_ratio(100.0);
    for (auto _ : st) benchmark::DoNotOptimize(flip_efficiency_series(r, 2.4, static_cast<std::size_t>(st.range(0))));
}

void BM_Transient(benchmark::State& st) {
    SimConfig cfg = default_sim_config();
    cfg.n_cycles = static_cast<std::size_t>(st.range(0));
    cfg.record_waveform = false;
    for (auto _ : st) benchmark::DoNotOptimize(run(cfg));
    st.SetItemsProcessed(st.iterations() * st.range(0) * 10000);
}

void BM_Batch(benchmark::State& st) {
    const auto cfgs = batch_configs(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(run_batch(cfgs));
}

void BM_BatchSerial(benchmark::State& st) {
    const auto cfgs = batch_configs(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(serial::run_batch(cfgs));
}

}  // namespace

BENCHMARK(BM_SweepCt)->Arg(1000)->Arg(100000);
BENCHMARK(BM_SweepCtSerial)->Arg(1000)->Arg(100000);
BENCHMARK(BM_FlipSeries)->Arg(300)->Arg(10000);
BENCHMARK(BM_Transient)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Batch)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchSerial)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
