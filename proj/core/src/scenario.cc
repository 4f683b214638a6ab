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
#include "weakprobe/scenario.h"

#include <cmath>
#include <stdexcept>

namespace weakprobe {

void TunnelingScenario::validate() const {
    if (!(x_min < x_max)) {
        throw std::invalid_argument("scenario: x_min must be below x_max");
    }
    if (!(barrier_left < barrier_right) || barrier_left <= x_min || barrier_right >= x_max) {
        throw std::invalid_argument("scenario: barrier must be non-empty and inside the domain");
    }
    if (!std::isfinite(height)) {
        throw std::invalid_argument("scenario: barrier height must be finite");
    }
    if (!(edge_tolerance > 0)) {
        throw std::invalid_argument("scenario: edge tolerance must be positive");
    }
    if (!(energy > 0) || !(sigma > 0) || !(total_time > 0) || !(dt > 0)) {
        throw std::invalid_argument("scenario: energy, sigma, total_time and dt must be positive");
    }
    double steps = total_time / dt;
    if (std::abs(steps - std::round(steps)) > 1e-6 * steps) {
        throw std::invalid_argument("scenario: total_time must be a multiple of dt");
    }
}

Grid TunnelingScenario::grid() const {
    return Grid::spanning(x_min, x_max, points);
}

BarrierSpec TunnelingScenario::barrier() const {
    return BarrierSpec::rectangular(barrier_left, barrier_right, height);
}

double TunnelingScenario::k0() const {
    return wavenumber_for_mean_energy(energy, sigma);
}

WaveFunction TunnelingScenario::packet() const {
    return make_gaussian_packet(grid(), x0, sigma, k0());
}

PropagatorConfig TunnelingScenario::config() const {
    validate();
    PropagatorConfig cfg;
    cfg.dt = dt;
    cfg.n_steps = static_cast<std::size_t>(std::llround(total_time / dt));
    cfg.scheme = scheme;
    cfg.fd_order = fd_order;
    cfg.edge_tolerance = edge_tolerance;
    return cfg;
}

std::vector<double> spread_record_times(const PropagatorConfig &cfg, std::size_t count) {
    if (count < 2) {
        throw std::invalid_argument("spread_record_times: need at least two times");
    }
    std::vector<double> times(count);
    for (std::size_t j = 0; j < count; j++) {
        auto step = static_cast<std::size_t>(std::llround(static_cast<double>(cfg.n_steps) * static_cast<double>(j) /
                                                          static_cast<double>(count - 1)));
        times[j] = static_cast<double>(step) * cfg.dt;
    }
    return times;
}

}  // namespace weakprobe
