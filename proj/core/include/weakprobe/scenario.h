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
#ifndef WEAKPROBE_SCENARIO_H
#define WEAKPROBE_SCENARIO_H

#include <cstddef>
#include <vector>

#include "weakprobe/barrier.h"
#include "weakprobe/grid.h"
#include "weakprobe/propagator.h"
#include "weakprobe/wavefunction.h"

namespace weakprobe {

/// Rectangular-barrier tunnelling setup. The defaults are the standard
/// scenario used by the fig2, dwell and two-probe commands: a packet of mean
/// energy V0/2 starting far enough to the left that it has no weight under
/// the barrier at t = 0.
struct TunnelingScenario {
    double x_min = -200.0;
    double x_max = 200.0;
    std::size_t points = 4096;
    double barrier_left = -5.0;
    double barrier_right = 5.0;
    double height = 1.0;
    double x0 = -100.0;
    double sigma = 11.0;
    /// Mean packet energy; k0 is solved from it.
    double energy = 0.5;
    double total_time = 175.0;
    double dt = PropagatorConfig{}.dt;
    Scheme scheme = Scheme::kSplitStep;
    int fd_order = PropagatorConfig{}.fd_order;
    /// Probability allowed near the grid ends before a run is stopped.
    double edge_tolerance = PropagatorConfig{}.edge_tolerance;

    /// Throws std::invalid_argument on inconsistent parameters.
    void validate() const;
    Grid grid() const;
    BarrierSpec barrier() const;
    WaveFunction packet() const;
    double k0() const;
    /// n_steps = round(total_time / dt); no record times.
    PropagatorConfig config() const;
};

/// `count` record times on the step grid, evenly spread over [0, T] and
/// including both ends.
std::vector<double> spread_record_times(const PropagatorConfig &cfg, std::size_t count);

}  // namespace weakprobe

#endif  // WEAKPROBE_SCENARIO_H
