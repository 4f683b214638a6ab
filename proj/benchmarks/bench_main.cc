// Copyright 2026 The weakprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <benchmark/benchmark.h>

#include <vector>

#include "weakprobe/corpuscle.h"
#include "weakprobe/pointer.h"
#include "weakprobe/propagator.h"
#include "weakprobe/scatter.h"
#include "weakprobe/scenario.h"

namespace {

using namespace weakprobe;

void BM_PropagatorStep(benchmark::State &state) {
    TunnelingScenario s;
    s.points = static_cast<std::size_t>(state.range(1));
    s.scheme = state.range(0) == 0 ? Scheme::kSplitStep : Scheme::kImplicitFd;
    Propagator stepper(s.grid(), s.barrier(), s.dt, s.scheme, s.fd_order);
    WaveFunction psi = s.packet();
    std::vector<Complex> amp(psi.amplitudes().begin(), psi.amplitudes().end());
    for (auto _ : state) {
        stepper.advance(amp, 1);
        benchmark::DoNotOptimize(amp.data());
    }
    state.SetLabel(scheme_name(s.scheme));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PropagatorStep)->ArgsProduct({{0, 1}, {1024, 4096}});

void BM_Bootstrap(benchmark::State &state) {
    CorpuscularModel model{0.5, 0.3, 0.3, 1.0, 10000, 3};
    PairSamples samples = simulate_corpuscular(model);
    CorpuscularityOptions opts{0.05, static_cast<std::size_t>(state.range(0)), 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(corpuscularity_test(samples, 1.0, opts));
    }
}
BENCHMARK(BM_Bootstrap)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ErasedMoments(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(erase_and_postselect(which_path_state(1.0, 1.0)).moments());
    }
}
BENCHMARK(BM_ErasedMoments)->Unit(benchmark::kMillisecond);

void BM_GroupDelay(benchmark::State &state) {
    BarrierSpec barrier = BarrierSpec::rectangular(0.0, static_cast<double>(state.range(0)), 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(group_delay(0.5, barrier));
    }
}
BENCHMARK(BM_GroupDelay)->Arg(10)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
