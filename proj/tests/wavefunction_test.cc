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
#include "weakprobe/wavefunction.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "weakprobe/barrier.h"
#include "weakprobe/grid.h"
#include "weakprobe/region.h"

namespace weakprobe {
namespace {

TEST(Grid, SpanningIsPeriodic) {
    Grid g = Grid::spanning(-10.0, 10.0, 64);
    EXPECT_DOUBLE_EQ(g.dx(), 20.0 / 64.0);
    EXPECT_DOUBLE_EQ(g.x_max(), 10.0);
    EXPECT_DOUBLE_EQ(g.x(63), 10.0 - g.dx());
    EXPECT_DOUBLE_EQ(g.wavenumber(1), g.dk());
    EXPECT_DOUBLE_EQ(g.wavenumber(63), -g.dk());
    EXPECT_DOUBLE_EQ(g.dk(), 2.0 * std::numbers::pi / 20.0);
}

TEST(Grid, RejectsBadSizes) {
    EXPECT_THROW(Grid::spanning(0.0, 1.0, 100), std::invalid_argument);
    EXPECT_THROW(Grid::spanning(0.0, 1.0, 1), std::invalid_argument);
    EXPECT_THROW(Grid::spanning(1.0, 0.0, 64), std::invalid_argument);
    EXPECT_THROW(Grid(0.0, -1.0, 64), std::invalid_argument);
}

TEST(GaussianPacket, MomentsMatchConstruction) {
    Grid g = Grid::spanning(-60.0, 60.0, 2048);
    WaveFunction psi = make_gaussian_packet(g, -7.0, 4.0, 1.3);
    EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-13);
    EXPECT_NEAR(psi.mean_position(), -7.0, 1e-12);
    EXPECT_NEAR(psi.position_variance(), 16.0, 1e-10);
    EXPECT_NEAR(psi.mean_wavenumber(), 1.3, 1e-12);
}

TEST(GaussianPacket, WavenumberForMeanEnergy) {
    double k0 = wavenumber_for_mean_energy(0.5, 10.0);
    EXPECT_NEAR(0.5 * k0 * k0 + 1.0 / (8.0 * 100.0), 0.5, 1e-15);
    EXPECT_THROW(wavenumber_for_mean_energy(1e-4, 10.0), std::invalid_argument);
}

TEST(GaussianPacket, RejectsNarrowOrClippedPackets) {
    Grid g = Grid::spanning(-10.0, 10.0, 64);
    EXPECT_THROW(make_gaussian_packet(g, 0.0, 0.5, 0.0), std::invalid_argument);
    EXPECT_THROW(make_gaussian_packet(g, 5.0, 2.0, 0.0), std::invalid_argument);
}

TEST(WaveFunction, InnerProductIsConjugateLinearInLeft) {
    Grid g = Grid::spanning(-30.0, 30.0, 512);
    WaveFunction a = make_gaussian_packet(g, -2.0, 3.0, 0.4);
    WaveFunction b = make_gaussian_packet(g, 1.0, 2.5, -0.2);
    Complex c(0.3, -1.1);
    EXPECT_NEAR(std::abs(a.scaled(c).inner(b) - std::conj(c) * a.inner(b)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(a.inner(b) - std::conj(b.inner(a))), 0.0, 1e-15);
    EXPECT_NEAR(l2_distance(a, a), 0.0, 0.0);
}

TEST(RegionProjector, HalfOpenRegionsTile) {
    Grid g = Grid::spanning(-8.0, 8.0, 64);
    RegionProjector left(g, -8.0, 0.0);
    RegionProjector right(g, 0.0, 8.0);
    EXPECT_EQ(left.count() + right.count(), g.size());
    EXPECT_EQ(left.last(), right.first());
    // The grid point at exactly 0 belongs to the right-hand region only.
    EXPECT_TRUE(right.contains(32));
    EXPECT_FALSE(left.contains(32));
    WaveFunction psi = make_gaussian_packet(g, 0.3, 1.0, 0.5);
    EXPECT_NEAR(left.expectation(psi) + right.expectation(psi), 1.0, 1e-13);
    EXPECT_NEAR(left.expectation(psi), psi.probability_in(-8.0, 0.0), 1e-15);
    EXPECT_THROW(RegionProjector(g, 1.0, 1.0), std::invalid_argument);
}

TEST(RegionProjector, ProjectorIsIdempotent) {
    Grid g = Grid::spanning(-8.0, 8.0, 64);
    RegionProjector p(g, -1.0, 2.5);
    WaveFunction psi = make_gaussian_packet(g, 0.0, 1.2, 0.7);
    WaveFunction once = p.apply(psi);
    EXPECT_NEAR(l2_distance(once, p.apply(once)), 0.0, 0.0);
    EXPECT_NEAR(std::abs(p.matrix_element(psi, psi) - p.expectation(psi)), 0.0, 1e-15);
}

TEST(Barrier, SegmentsAreHalfOpenAndSorted) {
    BarrierSpec b({{3.0, 4.0, 2.0}, {-1.0, 1.0, 0.5}});
    EXPECT_DOUBLE_EQ(b.left_edge(), -1.0);
    EXPECT_DOUBLE_EQ(b.right_edge(), 4.0);
    EXPECT_DOUBLE_EQ(b.span(), 5.0);
    EXPECT_DOUBLE_EQ(b.max_height(), 2.0);
    EXPECT_DOUBLE_EQ(b.potential(-1.0), 0.5);
    EXPECT_DOUBLE_EQ(b.potential(1.0), 0.0);
    EXPECT_DOUBLE_EQ(b.potential(3.5), 2.0);
    BarrierSpec m = b.mirrored();
    EXPECT_DOUBLE_EQ(m.left_edge(), -4.0);
    EXPECT_DOUBLE_EQ(m.potential(-3.5), 2.0);
    EXPECT_THROW(BarrierSpec({{0.0, 2.0, 1.0}, {1.0, 3.0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(BarrierSpec({{2.0, 1.0, 1.0}}), std::invalid_argument);
}

}  // namespace
}  // namespace weakprobe
