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
#include "weakprobe/scatter.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.h"
#include "weakprobe/errors.h"

namespace weakprobe {
namespace {

using testing::shooting_transmission;

double unwrap_near(double phase, double reference) {
    return phase + 2.0 * std::numbers::pi * std::round((reference - phase) / (2.0 * std::numbers::pi));
}

TEST(TransferMatrix, MatchesShootingIntegration) {
    for (double energy : {0.2, 0.5, 0.9, 1.3, 2.5}) {
        for (double width : {1.0, 4.0, 10.0}) {
            ScatterResult r = transfer_matrix_amplitudes(energy, BarrierSpec::rectangular(0.0, width, 1.0));
            std::complex<double> t = shooting_transmission(energy, 1.0, 0.0, width);
            EXPECT_NEAR(std::abs(r.t - t) / std::abs(t), 0.0, 1e-8) << "E=" << energy << " d=" << width;
        }
    }
}

TEST(TransferMatrix, ConservesFlux) {
    for (double energy : {0.05, 0.5, 0.99, 1.01, 3.0}) {
        ScatterResult r = transfer_matrix_amplitudes(energy, BarrierSpec::rectangular(-3.0, 2.0, 1.0));
        EXPECT_NEAR(r.transmission() + r.reflection(), 1.0, 1e-12);
    }
}

TEST(TransferMatrix, EmptyPotentialTransmitsFully) {
    ScatterResult r = transfer_matrix_amplitudes(0.7, BarrierSpec::none());
    EXPECT_NEAR(std::abs(r.t - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.r), 0.0, 1e-15);
}

TEST(TransferMatrix, IncidenceFromRightHasSameTransmission) {
    BarrierSpec barrier({{0.0, 1.0, 1.0}, {2.0, 5.0, 0.4}});
    ScatterResult left = transfer_matrix_amplitudes(0.6, barrier, Incidence::kFromLeft);
    ScatterResult right = transfer_matrix_amplitudes(0.6, barrier, Incidence::kFromRight);
    EXPECT_NEAR(left.transmission(), right.transmission(), 1e-12);
}

TEST(TransferMatrix, RejectsInvalidEnergies) {
    BarrierSpec barrier = BarrierSpec::rectangular(0.0, 1.0, 1.0);
    EXPECT_THROW(transfer_matrix_amplitudes(0.0, barrier), std::invalid_argument);
    EXPECT_THROW(transfer_matrix_amplitudes(-1.0, barrier), std::invalid_argument);
    EXPECT_THROW(transfer_matrix_amplitudes(1.0, barrier), std::invalid_argument);
}

TEST(TransferMatrix, OverflowIsGuarded) {
    EXPECT_THROW(transfer_matrix_amplitudes(0.5, BarrierSpec::rectangular(0.0, 2000.0, 1.0)), NumericalGuardError);
}

TEST(GroupDelay, MatchesShootingPhaseDerivative) {
    const double width = 6.0;
    const double h = 1e-4;
    for (double energy : {0.3, 0.5, 0.8}) {
        auto phase = [&](double e) {
            return std::arg(shooting_transmission(e, 1.0, 0.0, width, 8000)) + std::sqrt(2.0 * e) * width;
        };
        double lo = phase(energy - h);
        double hi = unwrap_near(phase(energy + h), lo);
        double oracle = (hi - lo) / (2.0 * h);
        GroupDelay d = group_delay(energy, BarrierSpec::rectangular(0.0, width, 1.0));
        EXPECT_NEAR(d.delay, oracle, 1e-5 * std::abs(oracle)) << "E=" << energy;
    }
}

TEST(GroupDelay, SaturatesWithWidth) {
    // E = V0 / 2: k = kappa = 1 and the opaque-barrier delay is 2/(k kappa).
    double previous = 0.0;
    for (double width : {1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 80.0}) {
        double delay = group_delay(0.5, BarrierSpec::rectangular(0.0, width, 1.0)).delay;
        EXPECT_GE(delay, previous - 1e-10) << "d=" << width;
        previous = delay;
    }
    double d40 = group_delay(0.5, BarrierSpec::rectangular(0.0, 40.0, 1.0)).delay;
    double d80 = group_delay(0.5, BarrierSpec::rectangular(0.0, 80.0, 1.0)).delay;
    EXPECT_LT(std::abs(d80 - d40) / d80, 1e-2);
    EXPECT_NEAR(d80, 2.0, 1e-6);
}

TEST(GroupDelay, IndependentOfBarrierPosition) {
    double a = group_delay(0.4, BarrierSpec::rectangular(0.0, 5.0, 1.0)).delay;
    double b = group_delay(0.4, BarrierSpec::rectangular(-30.0, -25.0, 1.0)).delay;
    EXPECT_NEAR(a, b, 1e-8 * std::abs(a));
}

}  // namespace
}  // namespace weakprobe
