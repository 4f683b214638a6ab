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
#include "weakprobe/two_probe.h"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.h"

namespace weakprobe {
namespace {

using testing::small_scenario;

class KickedModel : public ::testing::Test {
   protected:
    static void SetUpTestSuite() {
        TunnelingScenario s = small_scenario();
        barrier_ = new BarrierSpec(s.barrier());
        cfg_ = new PropagatorConfig(s.config());
        // Each kick multiplies a region by a phase, leaving a sharp step that
        // the band-limited propagator spreads into faint algebraic tails.
        cfg_->edge_tolerance = 1e-2;
        pair_ = new PrePostPair(postselect_transmitted(s.packet(), *barrier_, *cfg_, 0.0));
        probe_a_ = new WeakProbe{RegionTarget{-2.0, 0.0}, 1.0, 30.0, 40.0, 1};
        probe_b_ = new WeakProbe{RegionTarget{0.0, 2.0}, 1.0, 40.0, 50.0, 1};
        amps_ = new KickAmplitudes(kick_amplitudes(*pair_, *probe_a_, *probe_b_, *barrier_, *cfg_, kKicks));
    }
    static void TearDownTestSuite() {
        delete amps_;
        delete probe_b_;
        delete probe_a_;
        delete pair_;
        delete cfg_;
        delete barrier_;
    }

    // Pointer-mean error of the first-order run against the all-orders
    // kicked model for coupling delta.
    static std::pair<double, double> first_order_error(double delta) {
        WeakProbe a = *probe_a_, b = *probe_b_;
        a.delta = b.delta = delta;
        TwoProbeOptions opt;
        opt.kicks = kKicks;
        TwoProbeResult r = two_probe_run(*pair_, a, b, *barrier_, *cfg_, opt);
        PointerMoments exact = assemble_kicked_state(*amps_, a, b, opt.sigma).analytic_moments();
        return {std::abs(exact.mean_a - r.shift_a), std::abs(exact.mean_b - r.shift_b)};
    }

    static constexpr std::size_t kKicks = 4;
    static BarrierSpec *barrier_;
    static PropagatorConfig *cfg_;
    static PrePostPair *pair_;
    static WeakProbe *probe_a_;
    static WeakProbe *probe_b_;
    static KickAmplitudes *amps_;
};

BarrierSpec *KickedModel::barrier_ = nullptr;
PropagatorConfig *KickedModel::cfg_ = nullptr;
PrePostPair *KickedModel::pair_ = nullptr;
WeakProbe *KickedModel::probe_a_ = nullptr;
WeakProbe *KickedModel::probe_b_ = nullptr;
KickAmplitudes *KickedModel::amps_ = nullptr;

TEST_F(KickedModel, AmplitudesSumToOne) {
    // Setting both generating variables to 1 switches the coupling off.
    Complex sum = 0.0;
    for (const auto &row : amps_->c) {
        for (Complex c : row) {
            sum += c;
        }
    }
    EXPECT_NEAR(std::abs(sum - 1.0), 0.0, 1e-10);
    EXPECT_NEAR(amps_->base_probability, pair_->success_probability(), 1e-15);
}

TEST_F(KickedModel, FirstOrderErrorDecaysAtLeastQuadratically) {
    auto [ea1, eb1] = first_order_error(0.2);
    auto [ea2, eb2] = first_order_error(0.1);
    auto [ea3, eb3] = first_order_error(0.05);
    EXPECT_GT(ea1 / ea2, 4.0 / 1.5);
    EXPECT_GT(ea2 / ea3, 4.0 / 1.5);
    EXPECT_GT(eb1 / eb2, 4.0 / 1.5);
    EXPECT_GT(eb2 / eb3, 4.0 / 1.5);
    // Relative to the shift itself the error is already small at delta = 0.1.
    WeakProbe a = *probe_a_, b = *probe_b_;
    a.delta = b.delta = 0.1;
    TwoProbeOptions opt;
    opt.kicks = kKicks;
    TwoProbeResult r = two_probe_run(*pair_, a, b, *barrier_, *cfg_, opt);
    EXPECT_LT(ea2, 1e-3 * std::abs(r.shift_a));
}

TEST_F(KickedModel, ZeroCouplingLeavesPointersUnshifted) {
    WeakProbe a = *probe_a_, b = *probe_b_;
    a.delta = b.delta = 0.0;
    PointerMoments m = assemble_kicked_state(*amps_, a, b, 1.0).analytic_moments();
    EXPECT_NEAR(m.mean_a, 0.0, 1e-12);
    EXPECT_NEAR(m.mean_b, 0.0, 1e-12);
    EXPECT_NEAR(m.var_diff, 2.0, 1e-10);
    EXPECT_NEAR(m.postselect_prob, pair_->success_probability(), 1e-12);
}

TEST_F(KickedModel, OverlappingWindowsRejected) {
    WeakProbe late_a = *probe_a_;
    late_a.t_begin = 45.0;
    late_a.t_end = 55.0;
    EXPECT_THROW(kick_amplitudes(*pair_, late_a, *probe_b_, *barrier_, *cfg_, 2), std::invalid_argument);
}

TEST(TwoProbeRun, WindowsMustLieInsideRun) {
    TunnelingScenario s = small_scenario();
    s.total_time = 5.0;
    PropagatorConfig cfg = s.config();
    PrePostPair pair = postselect_everything(s.packet(), s.barrier(), cfg);
    WeakProbe a{RegionTarget{-128.0, 0.0}, 0.1, 0.0, 2.0, 1};
    WeakProbe b{RegionTarget{0.0, 128.0}, 0.1, 3.0, 6.0, 1};
    EXPECT_THROW(two_probe_run(pair, a, b, s.barrier(), cfg), std::invalid_argument);
    b.t_end = 5.0;
    b.sign = 2;
    EXPECT_THROW(two_probe_run(pair, a, b, s.barrier(), cfg), std::invalid_argument);
    b.sign = -1;
    TwoProbeResult r = two_probe_run(pair, a, b, s.barrier(), cfg);
    // Without post-selection the weak values are ordinary probabilities.
    // Ordinary probabilities up to the packet tail across x = 0.
    EXPECT_NEAR(r.weak_a.real(), 1.0, 1e-7);
    EXPECT_NEAR(r.weak_b.real(), 0.0, 1e-7);
    EXPECT_NEAR(r.shift_a, 0.1, 1e-8);
    EXPECT_NEAR(r.net_internal_shift, r.shift_a + r.shift_b, 0.0);
}

TEST(TwoProbeRun, SpinTargetsUseWeakValues) {
    SpinOps s = spin_ops(0.5);
    SpinOperator diag = (s.z + s.x) / std::sqrt(2.0);
    SpinState i = spin_eigenstate(s.z, 0.5);
    SpinState f = spin_eigenstate(s.x, 0.5);
    WeakProbe a{diag, 0.2, 0.0, 1.0, 1};
    WeakProbe b{SpinOperator(s.z), 0.2, 1.0, 2.0, -1};
    TwoProbeResult r = two_probe_run(i, f, a, b);
    EXPECT_NEAR(r.shift_a, 0.2 * std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(r.shift_b, -0.2 * 0.5, 1e-12);
    EXPECT_NEAR(r.moments.var_diff, 2.0, 1e-8);
    EXPECT_TRUE(r.warnings.empty());

    a.delta = 0.8;
    EXPECT_FALSE(two_probe_run(i, f, a, b).warnings.empty());
    WeakProbe region{RegionTarget{0.0, 1.0}, 0.1, 0.0, 1.0, 1};
    EXPECT_THROW(two_probe_run(i, f, region, b), std::invalid_argument);
}

TEST(ProbeKickSteps, MidpointsOfEqualSubintervals) {
    WeakProbe p{RegionTarget{0.0, 1.0}, 0.1, 2.0, 4.0, 1};
    auto steps = probe_kick_steps(p, 0.01, 4);
    ASSERT_EQ(steps.size(), 4u);
    EXPECT_EQ(steps[0], 225u);
    EXPECT_EQ(steps[3], 375u);
    EXPECT_THROW(probe_kick_steps(p, 0.01, 0), std::invalid_argument);
}

}  // namespace
}  // namespace weakprobe
