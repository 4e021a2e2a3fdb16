#include <benchmark/benchmark.h>

#include <vector>

#include "qpa/engine.hpp"
#include "qpa/protocol.hpp"

using namespace qpa;

static void BM_QpaStep(benchmark::State& state) {
    SeededRng rng(1);
    const Qubit control = bb84_to_qubit(Bb84Label::PlusX);
    const Qubit target = bb84_to_qubit(Bb84Label::PlusZ);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qpa_step(control, target, rng.uniform()));
    }
}
BENCHMARK(BM_QpaStep);

static void BM_Cascade(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    SeededRng label_rng(2);
    std::vector<std::pair<Bb84Label, Qubit>> group;
    for (std::size_t i = 0; i < m; ++i) {
        const Bb84Label l = kAllLabels[label_rng.below(4)];
        group.emplace_back(l, bb84_to_qubit(l));
    }
    SeededRng rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cascade(group, rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m));
}
BENCHMARK(BM_Cascade)->Arg(2)->Arg(4)->Arg(8);

static void BM_LeakageMonteCarlo(benchmark::State& state) {
    const long trials = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(leakage_monte_carlo(0.25, 3, trials, 4));
    }
    state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_LeakageMonteCarlo)->Arg(10000)->Arg(100000);

static void BM_RunProtocol(benchmark::State& state) {
    ProtocolConfig config;
    config.n_batch = static_cast<std::size_t>(state.range(0));
    config.check_fraction = 0.1;
    config.group_size_m = 3;
    config.seed = 5;
    config.message_bits.assign(64, 1);
    const ChannelModel channel{ChannelKind::InterceptResend, 0.1};
    ProtocolConfig c = config;
    c.error_threshold = 0.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_protocol(c, channel));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.n_batch));
}
BENCHMARK(BM_RunProtocol)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
