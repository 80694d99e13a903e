#include <benchmark/benchmark.h>

#include <nlohmann/json.hpp>

#include "aqrm/config.hpp"
#include "aqrm/cv_magic.hpp"
#include "aqrm/model.hpp"
#include "aqrm/reduction.hpp"
#include "aqrm/spectral.hpp"
#include "aqrm/sweep.hpp"

namespace {

aqrm::ModelParams usc_point() {
    aqrm::ModelParams p;
    p.g = 0.8;
    p.epsilon = 0.3;
    return p;
}

void BM_BuildHamiltonian(benchmark::State& state) {
    const aqrm::TruncatedBasis basis(static_cast<int>(state.range(0)));
    const auto p = usc_point();
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqrm::build_hamiltonian(p, basis));
    }
}
BENCHMARK(BM_BuildHamiltonian)->Arg(40)->Arg(160);

void BM_Diagonalize(benchmark::State& state) {
    const aqrm::TruncatedBasis basis(static_cast<int>(state.range(0)));
    const auto h = aqrm::build_hamiltonian(usc_point(), basis);
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqrm::diagonalize(h));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Diagonalize)->Arg(40)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

// Wigner assembly for the first excited state marginal.
void BM_BosonicMana(benchmark::State& state) {
    const aqrm::TruncatedBasis basis(40);
    const auto sol = aqrm::diagonalize(aqrm::build_hamiltonian(usc_point(), basis));
    const auto rho = aqrm::trace_out_qubit(sol.state(1), basis);
    aqrm::GridOptions opts;
    opts.spacing = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqrm::bosonic_mana(rho, opts));
    }
}
BENCHMARK(BM_BosonicMana)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_MapPoint(benchmark::State& state) {
    const auto cfg = aqrm::parse_sweep_config(nlohmann::json::parse(R"({
        "mode": "parameter-map",
        "params": {"omega": 1, "Delta": 0.5, "xi": 1},
        "axes": [{"name": "epsilon", "min": -1, "max": 1, "count": 2},
                 {"name": "g", "min": 0, "max": 1, "count": 2}],
        "wigner": {"enabled": true}
    })"));
    const auto p = usc_point();
    for (auto _ : state) {
        benchmark::DoNotOptimize(aqrm::evaluate_point(cfg, p, 0));
    }
}
BENCHMARK(BM_MapPoint)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
