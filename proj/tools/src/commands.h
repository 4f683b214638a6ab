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
#ifndef WEAKPROBE_TOOLS_COMMANDS_H
#define WEAKPROBE_TOOLS_COMMANDS_H

#include <cstdint>
#include <string>
#include <vector>

#include "output.h"
#include "weakprobe/scenario.h"
#include "weakprobe/weak_value.h"

namespace weakprobe::cli {

struct Fig2Params {
    TunnelingScenario scenario;
    std::size_t records = 20;
    /// Post-selection keeps x >= barrier right edge + offset.
    double offset = 0.0;
    bool snapshots = true;
};

struct DwellParams {
    TunnelingScenario scenario;
    std::string postselect = "transmitted";
    double offset = 0.0;
    std::size_t samples = 600;
};

struct TwoProbeParams {
    TunnelingScenario scenario;
    double offset = 0.0;
    double delta = 0.1;
    double pointer_sigma = 1.0;
    std::size_t kicks = 16;
    /// Probe windows; negative values mean "derive from the run length".
    double window_a_begin = 0.0;
    double window_a_end = 20.0;
    double window_b_begin = -1.0;
    double window_b_end = -1.0;
    int sign_a = 1;
    int sign_b = 1;
    double alpha = 0.05;
};

struct PointerParams {
    double delta = 1.0;
    double delta_a = 0.5;
    double delta_b = 0.5;
    double sigma = 1.0;
    std::size_t points = 512;
    double alpha = 0.05;
};

struct HartmanParams {
    double energy = 0.5;
    double height = 1.0;
    std::vector<double> widths = {10, 20, 40, 80};
};

struct ScatterParams {
    std::vector<double> energies = {0.1, 0.25, 0.5, 0.75, 0.9};
    double height = 1.0;
    double width = 10.0;
};

struct CorpuscleParams {
    double p = 0.5;
    double delta_a = 0.3;
    double delta_b = 0.3;
    double sigma = 1.0;
    std::size_t n = 10000;
    std::uint64_t seed = 1;
};

struct CorpuscleTestParams {
    /// CSV with columns pair_index,a,b; when empty, samples are generated
    /// from `source` and the model parameters.
    std::string samples;
    std::string source = "corpuscular";
    CorpuscleParams model;
    double sigma0 = 1.0;
    double alpha = 0.05;
    std::size_t resamples = 10000;
    std::uint64_t bootstrap_seed = 1;
};

/// Conditional weight in the entrance zone (left of the barrier's first third),
/// the central third, and the exit zone (right of its last third).
struct ZoneWeights {
    double entrance = 0.0;
    double center = 0.0;
    double exit = 0.0;
    double total = 0.0;
};

ZoneWeights zone_weights(const ConditionalDistribution &dist, std::size_t j, const BarrierSpec &barrier);

struct Fig2Summary {
    std::vector<ZoneWeights> zones;
    /// |center| / (|entrance| + |exit|) per recorded time.
    std::vector<double> center_ratio;
    double max_center_ratio = 0.0;
    double max_normalization_error = 0.0;
    bool entrance_first = false;
    bool exit_last = false;
};

Fig2Summary summarize_fig2(const ConditionalDistribution &dist, const BarrierSpec &barrier);

void run_fig2(const Fig2Params &p, OutputDir &out);
void run_dwell(const DwellParams &p, OutputDir &out);
void run_two_probe(const TwoProbeParams &p, OutputDir &out);
void run_variance(const PointerParams &p, OutputDir &out);
void run_erased(const PointerParams &p, OutputDir &out);
void run_certain(const PointerParams &p, OutputDir &out);
void run_hartman(const HartmanParams &p, OutputDir &out);
void run_scatter(const ScatterParams &p, OutputDir &out);
void run_corpuscle_sim(const CorpuscleParams &p, OutputDir &out);
void run_corpuscle_test(const CorpuscleTestParams &p, OutputDir &out);

}  // namespace weakprobe::cli

#endif
