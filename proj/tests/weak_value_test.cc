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
#include "weakprobe/weak_value.h"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.h"
#include "weakprobe/errors.h"

namespace weakprobe {
namespace {

using testing::small_scenario;

class TransmittedPair : public ::testing::Test {
   protected:
    static void SetUpTestSuite() {
        scenario_ = new TunnelingScenario(small_scenario());
        cfg_ = new PropagatorConfig(scenario_->config());
        pair_ = new PrePostPair(postselect_transmitted(scenario_->packet(), scenario_->barrier(), *cfg_, 0.0));
    }
    static void TearDownTestSuite() {
        delete pair_;
        delete cfg_;
        delete scenario_;
    }

    static TunnelingScenario *scenario_;
    static PropagatorConfig *cfg_;
    static PrePostPair *pair_;
};

TunnelingScenario *TransmittedPair::scenario_ = nullptr;
PropagatorConfig *TransmittedPair::cfg_ = nullptr;
PrePostPair *TransmittedPair::pair_ = nullptr;

TEST_F(TransmittedPair, SuccessProbabilityIsTransmittedWeight) {
    WaveFunction end = evolve(scenario_->packet(), scenario_->barrier(), *cfg_);
    double direct = end.probability_in(scenario_->barrier_right, scenario_->x_max);
    EXPECT_NEAR(pair_->success_probability(), direct, 1e-12 * direct);
    EXPECT_GT(direct, 1e-5);
    EXPECT_LT(direct, 1e-2);
}

TEST_F(TransmittedPair, DistributionNormalizedAtEveryTime) {
    PropagatorConfig cfg = *cfg_;
    cfg.record_times = spread_record_times(cfg, 20);
    ConditionalDistribution dist = conditional_distribution(*pair_, scenario_->barrier(), cfg);
    ASSERT_EQ(dist.times.size(), 20u);
    for (std::size_t j = 0; j < dist.times.size(); ++j) {
        EXPECT_NEAR(dist.total(j), 1.0, 1e-8) << "t=" << dist.times[j];
    }
}

// At t = T the final state is the transmitted part itself, so the
// conditional density is the renormalized transmitted density.
TEST_F(TransmittedPair, FinalTimeMatchesTransmittedDensity) {
    PropagatorConfig cfg = *cfg_;
    cfg.record_times = {cfg.total_time()};
    ConditionalDistribution dist = conditional_distribution(*pair_, scenario_->barrier(), cfg);
    WaveFunction end = evolve(pair_->initial, scenario_->barrier(), cfg);
    double p = pair_->success_probability();
    const Grid &g = end.grid();
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        double expect = g.x(k) >= scenario_->barrier_right ? end.density(k) / p : 0.0;
        worst = std::max(worst, std::abs(dist.re[0][k] - expect));
        EXPECT_NEAR(dist.im[0][k], 0.0, 1e-8);
    }
    EXPECT_LT(worst, 1e-8);
}

TEST_F(TransmittedPair, TilingRegionsSumToOne) {
    double c = scenario_->barrier().center();
    std::vector<std::pair<double, double>> regions = {
        {scenario_->x_min, scenario_->barrier_left}, {scenario_->barrier_left, c}, {c, scenario_->x_max}};
    std::vector<std::size_t> steps = {0, 1000, 5000, 8000, cfg_->n_steps};
    RegionWeakValueSeries s = region_weak_values(*pair_, regions, scenario_->barrier(), *cfg_, steps);
    ASSERT_EQ(s.times.size(), steps.size());
    for (std::size_t j = 0; j < s.times.size(); ++j) {
        Complex sum = s.values[0][j] + s.values[1][j] + s.values[2][j];
        EXPECT_NEAR(std::abs(sum - 1.0), 0.0, 1e-8) << "t=" << s.times[j];
    }
    // Early on the transmitted sub-ensemble is left of the barrier up to the
    // packet tail.
    EXPECT_NEAR(s.values[0][0].real(), 1.0, 1e-5);
    EXPECT_NEAR(s.values[2].back().real(), 1.0, 1e-8);
}

TEST_F(TransmittedPair, RegionWeakValueMatchesDirectDefinition) {
    std::pair<double, double> region{-10.0, 0.0};
    std::vector<std::size_t> steps = {6000};
    RegionWeakValueSeries s = region_weak_values(*pair_, std::span(&region, 1), scenario_->barrier(), *cfg_, steps);
    PropagatorConfig to_t = *cfg_;
    to_t.n_steps = 6000;
    PropagatorConfig rest = *cfg_;
    rest.n_steps = cfg_->n_steps - 6000;
    WaveFunction i_t = evolve(pair_->initial, scenario_->barrier(), to_t);
    WaveFunction f_t = evolve(pair_->final_state, scenario_->barrier(), rest, true);
    Complex direct = weak_value(RegionProjector(i_t.grid(), region.first, region.second), i_t, f_t);
    EXPECT_NEAR(std::abs(s.values[0][0] - direct), 0.0, 1e-10 * std::abs(direct));
}

TEST_F(TransmittedPair, MismatchedRunLengthRejected) {
    PropagatorConfig cfg = *cfg_;
    cfg.n_steps += 10;
    cfg.record_times = {0.0};
    EXPECT_THROW(conditional_distribution(*pair_, scenario_->barrier(), cfg), std::invalid_argument);
}

TEST(Unconditioned, DistributionIsOrdinaryDensity) {
    TunnelingScenario s = small_scenario();
    PropagatorConfig cfg = s.config();
    cfg.record_times = spread_record_times(cfg, 5);
    PrePostPair pair = postselect_everything(s.packet(), s.barrier(), cfg);
    EXPECT_NEAR(pair.success_probability(), 1.0, 1e-10);
    ConditionalDistribution dist = conditional_distribution(pair, s.barrier(), cfg);
    auto snaps = propagate(s.packet(), s.barrier(), cfg);
    for (std::size_t j = 0; j < snaps.size(); ++j) {
        double worst = 0.0;
        for (std::size_t k = 0; k < snaps[j].psi.size(); ++k) {
            worst = std::max(worst, std::abs(dist.re[j][k] - snaps[j].psi.density(k)));
        }
        EXPECT_LT(worst, 1e-9) << "t=" << snaps[j].time;
    }
}

// Without post-selection the conditional dwell time is the time integral of
// the probability inside the barrier.
TEST(Unconditioned, DwellTimeIsDensityIntegral) {
    TunnelingScenario s = small_scenario();
    PropagatorConfig cfg = s.config();
    BarrierSpec barrier = s.barrier();
    PrePostPair pair = postselect_everything(s.packet(), barrier, cfg);
    double dwell = conditional_dwell_time(pair, {s.barrier_left, s.barrier_right}, barrier, cfg, 300);

    std::vector<std::size_t> steps = uniform_sample_steps(cfg.n_steps, 300);
    PropagatorConfig rec = cfg;
    for (std::size_t st : steps) {
        rec.record_times.push_back(static_cast<double>(st) * cfg.dt);
    }
    auto snaps = propagate(s.packet(), barrier, rec);
    double oracle = 0.0;
    for (std::size_t j = 1; j < snaps.size(); ++j) {
        oracle += 0.5 * (snaps[j].time - snaps[j - 1].time) *
                  (snaps[j].psi.probability_in(s.barrier_left, s.barrier_right) +
                   snaps[j - 1].psi.probability_in(s.barrier_left, s.barrier_right));
    }
    EXPECT_GT(oracle, 0.1);
    EXPECT_NEAR(dwell, oracle, 1e-9 * oracle);
}

TEST(PrePost, OrthogonalPostselectionGuarded) {
    TunnelingScenario s = small_scenario();
    s.total_time = 1.0;
    PropagatorConfig cfg = s.config();
    WaveFunction far = make_gaussian_packet(s.grid(), 60.0, 3.0, 0.0);
    EXPECT_THROW(make_pre_post_pair(s.packet(), far, s.barrier(), cfg), NumericalGuardError);
    // A packet at rest far left of the barrier leaves nothing on the right side.
    WaveFunction idle = make_gaussian_packet(s.grid(), -90.0, 3.0, 0.0);
    EXPECT_THROW(postselect_transmitted(idle, s.barrier(), cfg, 0.0), NumericalGuardError);
}

TEST(PrePost, GridsMustMatch) {
    TunnelingScenario s = small_scenario();
    s.total_time = 1.0;
    WaveFunction other = make_gaussian_packet(Grid::spanning(-100.0, 100.0, 512), -40.0, 5.0, 1.0);
    EXPECT_THROW(make_pre_post_pair(s.packet(), other, s.barrier(), s.config()), std::invalid_argument);
}

TEST(SampleSteps, CoverRunWithFinalStep) {
    auto steps = uniform_sample_steps(1000, 7);
    EXPECT_EQ(steps.front(), 0u);
    EXPECT_EQ(steps.back(), 1000u);
    EXPECT_LE(steps.size(), 8u);
    for (std::size_t j = 1; j < steps.size(); ++j) {
        EXPECT_GT(steps[j], steps[j - 1]);
    }
    EXPECT_EQ(uniform_sample_steps(3, 10).size(), 4u);
    EXPECT_THROW(uniform_sample_steps(10, 0), std::invalid_argument);
}

}  // namespace
}  // namespace weakprobe
