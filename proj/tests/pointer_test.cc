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
#include "weakprobe/pointer.h"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "weakprobe/errors.h"

namespace weakprobe {
namespace {

double gauss(double x, double center, double sigma) {
    return std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25) *
           std::exp(-(x - center) * (x - center) / (4.0 * sigma * sigma));
}

struct Moments2D {
    double norm = 0, mean_a = 0, mean_b = 0, var_diff = 0;
};

// Direct 2-D Riemann sum of a joint density over +/- 12 sigma around the
// shifts; Gaussians make this spectrally accurate.
Moments2D integrate(const std::function<double(double, double)> &density, double sigma, double lo, double hi) {
    const int n = 801;
    double a0 = lo - 12.0 * sigma, a1 = hi + 12.0 * sigma;
    double h = (a1 - a0) / (n - 1);
    double s0 = 0, sa = 0, sb = 0, sdd = 0, sd = 0;
    for (int i = 0; i < n; ++i) {
        double a = a0 + i * h;
        for (int j = 0; j < n; ++j) {
            double b = a0 + j * h;
            double w = density(a, b);
            s0 += w;
            sa += w * a;
            sb += w * b;
            sd += w * (a - b);
            sdd += w * (a - b) * (a - b);
        }
    }
    Moments2D m;
    m.norm = s0 * h * h;
    m.mean_a = sa / s0;
    m.mean_b = sb / s0;
    m.var_diff = sdd / s0 - (sd / s0) * (sd / s0);
    return m;
}

TEST(PointerState, OverlapMatchesNumericIntegral) {
    for (double delta : {0.0, 0.3, 1.0, 2.5}) {
        PointerState a(0.0, 0.8);
        PointerState b(delta, 0.8);
        double sum = 0.0, h = 1e-3;
        for (double x = -15.0; x < 15.0; x += h) {
            sum += gauss(x, 0.0, 0.8) * gauss(x, delta, 0.8) * h;
        }
        EXPECT_NEAR(a.overlap(b), sum, 1e-10);
        EXPECT_NEAR(a.overlap(b), std::exp(-delta * delta / (8.0 * 0.64)), 1e-15);
    }
}

TEST(PointerState, SampledMomentsAreCenterAndSigma) {
    PointerState p(1.7, 0.6);
    PointerAxis axis = p.default_axis(513);
    PointerQuadrature q = pointer_moments(p.sample(axis), axis);
    EXPECT_NEAR(q.norm, 1.0, 1e-12);
    EXPECT_NEAR(q.mean, 1.7, 1e-12);
    EXPECT_NEAR(q.variance, 0.36, 1e-12);
    EXPECT_THROW(PointerState(0.0, 0.0), std::invalid_argument);
    EXPECT_THROW(PointerState(NAN, 1.0), std::invalid_argument);
}

class WhichPath : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(WhichPath, VarianceGrowsByDeltaSquared) {
    auto [sigma, delta] = GetParam();
    PointerMoments m = which_path_state(delta, sigma).moments();
    EXPECT_NEAR(m.var_diff, 2.0 * sigma * sigma + delta * delta, 1e-8);
    EXPECT_NEAR(m.mean_a, delta / 2.0, 1e-8);
    EXPECT_NEAR(m.mean_b, delta / 2.0, 1e-8);
    EXPECT_NEAR(m.postselect_prob, 1.0, 0.0);

    Moments2D oracle = integrate(
        [&](double a, double b) {
            double g1 = gauss(a, delta, sigma) * gauss(b, 0.0, sigma);
            double g2 = gauss(a, 0.0, sigma) * gauss(b, delta, sigma);
            return 0.5 * g1 * g1 + 0.5 * g2 * g2;
        },
        sigma, 0.0, delta);
    EXPECT_NEAR(oracle.norm, 1.0, 1e-9);
    EXPECT_NEAR(m.var_diff, oracle.var_diff, 1e-8);
}

TEST_P(WhichPath, ErasedStateMatchesQuadratureOracle) {
    auto [sigma, delta] = GetParam();
    JointPointerState erased = erase_and_postselect(which_path_state(delta, sigma));
    PointerMoments m = erased.moments();
    double k = erased_normalization(delta, sigma);
    Moments2D oracle = integrate(
        [&](double a, double b) {
            double amp = k * (gauss(a, delta, sigma) * gauss(b, 0.0, sigma) + gauss(a, 0.0, sigma) * gauss(b, delta, sigma));
            return amp * amp;
        },
        sigma, 0.0, delta);
    EXPECT_NEAR(oracle.norm, 1.0, 1e-9);
    EXPECT_NEAR(m.var_diff, oracle.var_diff, 1e-8);
    EXPECT_NEAR(m.mean_a, oracle.mean_a, 1e-8);
    double c = std::exp(-delta * delta / (8.0 * sigma * sigma));
    EXPECT_NEAR(m.var_diff, 2.0 * sigma * sigma + delta * delta / (1.0 + c * c), 1e-8);
    EXPECT_NEAR(m.mean_a, delta / 2.0, 1e-8);
    EXPECT_NEAR(m.mean_b, delta / 2.0, 1e-8);
    EXPECT_NEAR(m.postselect_prob, 0.5 * (1.0 + c * c), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Grid, WhichPath,
                         ::testing::Values(std::pair{0.5, 0.5}, std::pair{0.5, 1.0}, std::pair{0.5, 2.0},
                                           std::pair{1.0, 0.5}, std::pair{1.0, 1.0}, std::pair{1.0, 2.0},
                                           std::pair{2.0, 0.5}, std::pair{2.0, 1.0}, std::pair{2.0, 2.0}));

TEST(Erased, NormalizationFormula) {
    for (double delta : {0.0, 0.1, 0.7, 3.0}) {
        double sigma = 1.3;
        double c = PointerState(0.0, sigma).overlap(PointerState(delta, sigma));
        double k = erased_normalization(delta, sigma);
        EXPECT_NEAR(k, 1.0 / std::sqrt(2.0 * (1.0 + std::norm(c))), 1e-15);
        JointPointerState erased = erase_and_postselect(which_path_state(delta, sigma));
        EXPECT_NEAR(std::abs(erased.branches()[0][0].coeff - k), 0.0, 1e-15);
        EXPECT_NEAR(erased.norm_squared(), 1.0, 1e-10);
    }
    EXPECT_DOUBLE_EQ(erased_normalization(0.0, 1.0), 0.5);
}

TEST(Erased, ZeroShiftIsUnshiftedProduct) {
    PointerMoments m = erase_and_postselect(which_path_state(0.0, 1.0)).moments();
    PointerMoments p = product_state(PointerState(0.0, 1.0), PointerState(0.0, 1.0)).moments();
    EXPECT_NEAR(m.var_diff, p.var_diff, 1e-12);
    EXPECT_NEAR(m.var_diff, 2.0, 1e-10);
}

// Finding pointer A near zero makes the branch in which B moved more likely.
TEST(Erased, PointersAnticorrelate) {
    double delta = 1.0, sigma = 1.0;
    JointPointerState erased = erase_and_postselect(which_path_state(delta, sigma));
    double at_zero = erased.conditional_mean_b(0.0);
    double at_delta = erased.conditional_mean_b(delta);
    EXPECT_GT(at_zero, delta / 2.0);
    EXPECT_LT(at_delta, delta / 2.0);

    // Direct conditional mean along the row x_a = 0 of the coherent sum.
    double k = erased_normalization(delta, sigma), s0 = 0.0, s1 = 0.0;
    const PointerAxis &ab = erased.axis_b();
    double xa = erased.axis_a().x(static_cast<std::size_t>(std::lround(-erased.axis_a().x_min / erased.axis_a().dx)));
    for (std::size_t j = 0; j < ab.n; ++j) {
        double b = ab.x(j);
        double amp = k * (gauss(xa, delta, sigma) * gauss(b, 0.0, sigma) + gauss(xa, 0.0, sigma) * gauss(b, delta, sigma));
        s0 += amp * amp;
        s1 += amp * amp * b;
    }
    EXPECT_NEAR(at_zero, s1 / s0, 1e-12);
    EXPECT_THROW(erased.conditional_mean_b(1e6), std::invalid_argument);
}

TEST(CertainShift, KeepsUnshiftedVariance) {
    for (double mu : {0.0, 0.15, 0.5, 1.0}) {
        PointerMoments m = certain_shift_state(mu, mu, 1.0).moments();
        EXPECT_NEAR(m.var_diff, 2.0, 1e-8);
        EXPECT_NEAR(m.mean_a, mu, 1e-8);
        EXPECT_NEAR(m.mean_b, mu, 1e-8);
        EXPECT_NEAR(m.var_a, 1.0, 1e-8);
    }
}

// Random superpositions of shifted Gaussians: the product-of-Gaussians
// expansion and the grid quadrature agree.
TEST(JointPointerState, AnalyticMomentsMatchQuadrature) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> shift(-1.5, 1.5);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<JointPointerState::Branch> branches(1 + trial % 2);
        for (auto &branch : branches) {
            for (int t = 0; t < 3; ++t) {
                branch.push_back({std::complex<double>(coeff(rng), coeff(rng)), shift(rng), shift(rng)});
            }
        }
        JointPointerState state(JointForm::kTwoProbe, 0.9, branches);
        PointerMoments q = state.moments();
        PointerMoments a = state.analytic_moments();
        EXPECT_NEAR(q.mean_a, a.mean_a, 1e-9);
        EXPECT_NEAR(q.mean_b, a.mean_b, 1e-9);
        EXPECT_NEAR(q.var_a, a.var_a, 1e-9);
        EXPECT_NEAR(q.var_b, a.var_b, 1e-9);
        EXPECT_NEAR(q.var_diff, a.var_diff, 1e-9);
    }
}

TEST(JointPointerState, CoarseGridFailsConvergenceGuard) {
    JointPointerState state = which_path_state(1.0, 1.0, 16);
    EXPECT_THROW(state.moments(), NumericalGuardError);
}

TEST(JointPointerState, InvalidInputsRejected) {
    EXPECT_THROW(which_path_state(1.0, -1.0), std::invalid_argument);
    EXPECT_THROW(JointPointerState(JointForm::kProduct, 1.0, {}), std::invalid_argument);
    EXPECT_THROW(JointPointerState(JointForm::kProduct, 1.0, {{{1.0, 0.0, 0.0}}}, 1.5), std::invalid_argument);
    EXPECT_THROW(erase_and_postselect(certain_shift_state(1.0, 1.0, 1.0)), std::invalid_argument);
    EXPECT_THROW(product_state(PointerState(0.0, 1.0), PointerState(0.0, 2.0)), std::invalid_argument);
}

}  // namespace
}  // namespace weakprobe
