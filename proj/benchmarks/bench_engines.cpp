// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "qsd/nmr.hpp"

using namespace qsd;

namespace {

AncillaProgramme programme_for(double alpha, double tt1, double eps) {
    Ket2 psi1 = make_data_state(QubitStateSpec{tt1, eps, StateLabel::Psi1});
    return solve_ancilla(alpha, psi1[0], psi1[1]);
}

void BM_BuildUDecomposed(benchmark::State& state) {
    double alpha = 60.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_U_decomposed(alpha));
    }
}
BENCHMARK(BM_BuildUDecomposed);

void BM_GateProtocol(benchmark::State& state) {
    QubitStateSpec spec{40.0, 15.0, StateLabel::Psi1};
    AncillaProgramme prog = programme_for(60.0, 40.0, 15.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_protocol(spec, prog, 60.0));
    }
}
BENCHMARK(BM_GateProtocol);

void BM_PreparePseudopure(benchmark::State& state) {
    nmr::SpinSystem sys;
    for (auto _ : state) {
        benchmark::DoNotOptimize(nmr::prepare_pseudopure(sys));
    }
}
BENCHMARK(BM_PreparePseudopure);

void BM_PulseProtocol(benchmark::State& state) {
    nmr::SpinSystem sys;
    QubitStateSpec spec{40.0, 15.0, StateLabel::Psi1};
    AncillaProgramme prog = programme_for(60.0, 40.0, 15.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(nmr::run_pulse_protocol(sys, spec, prog, 60.0));
    }
}
BENCHMARK(BM_PulseProtocol);

}  // namespace

BENCHMARK_MAIN();
