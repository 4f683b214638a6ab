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
#ifndef WEAKPROBE_TESTS_TEST_SUPPORT_H
#define WEAKPROBE_TESTS_TEST_SUPPORT_H

#include <cmath>
#include <complex>

#include "weakprobe/scenario.h"

namespace weakprobe::testing {

// Scaled-down tunnelling setup that propagates in well under a second. The
// barrier edges sit on grid points. The backward-evolved post-selected state
// brushes the grid ends at the 1e-7 level on this short domain, hence the
// looser edge tolerance.
inline TunnelingScenario small_scenario() {
    TunnelingScenario s;
    s.x_min = -128.0;
    s.x_max = 128.0;
    s.points = 1024;
    s.barrier_left = -2.0;
    s.barrier_right = 2.0;
    s.height = 1.0;
    s.x0 = -30.0;
    s.sigma = 5.0;
    s.energy = 0.5;
    s.total_time = 60.0;
    s.dt = 0.005;
    s.edge_tolerance = 1e-6;
    return s;
}

// Stationary Schrodinger equation psi'' = 2 (V - E) psi integrated with RK4
// from right to left across a rectangular barrier, starting from the pure
// transmitted wave t e^{ikx} (t = 1). Returns the transmission amplitude in
// the convention psi = e^{ikx} + r e^{-ikx} to the left.
inline std::complex<double> shooting_transmission(double energy, double height, double x_left, double x_right,
                                                  int steps_per_unit = 4000) {
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    double k = std::sqrt(2.0 * energy);
    auto v = [&](double x) { return (x >= x_left && x < x_right) ? height : 0.0; };
    double a = x_left - 1.0;
    double b = x_right + 1.0;
    int n = static_cast<int>(std::ceil((b - a) * steps_per_unit));
    double h = -(b - a) / n;
    C psi = std::exp(i * k * b);
    C dpsi = i * k * psi;
    double x = b;
    auto f = [&](double xx, C p) { return 2.0 * (v(xx) - energy) * p; };
    for (int s = 0; s < n; ++s) {
        C k1p = dpsi, k1d = f(x, psi);
        C k2p = dpsi + 0.5 * h * k1d, k2d = f(x + 0.5 * h, psi + 0.5 * h * k1p);
        C k3p = dpsi + 0.5 * h * k2d, k3d = f(x + 0.5 * h, psi + 0.5 * h * k2p);
        C k4p = dpsi + h * k3d, k4d = f(x + h, psi + h * k3p);
        psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        dpsi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        x += h;
    }
    // Left of the barrier psi = A e^{ikx} + B e^{-ikx}; t = 1 / A.
    C incoming = 0.5 * (psi + dpsi / (i * k)) * std::exp(-i * k * x);
    return 1.0 / incoming;
}

}  // namespace weakprobe::testing

#endif
