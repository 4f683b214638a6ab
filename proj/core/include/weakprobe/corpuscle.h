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
#ifndef WEAKPROBE_CORPUSCLE_H
#define WEAKPROBE_CORPUSCLE_H

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "weakprobe/pointer.h"

namespace weakprobe {

/// Corpuscular null model: every particle moves exactly one of its two
/// pointers. With probability p pointer A is shifted by delta_a, otherwise
/// pointer B is shifted by delta_b; both pointers carry Gaussian noise sigma.
struct CorpuscularModel {
    double p = 0.5;
    double delta_a = 0.0;
    double delta_b = 0.0;
    double sigma = 1.0;
    std::size_t n = 10000;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument unless p in [0,1], sigma > 0, n >= 1.
    void validate() const;
    double mean_a() const {
        return p * delta_a;
    }
    double mean_b() const {
        return (1.0 - p) * delta_b;
    }
    /// Population Var(a - b).
    double variance_of_difference() const;
};

/// Pointer readings a_i, b_i for each particle.
struct PairSamples {
    std::vector<double> a;
    std::vector<double> b;

    std::size_t size() const {
        return a.size();
    }
};

/// Deterministic for a given seed.
PairSamples simulate_corpuscular(const CorpuscularModel &model);

/// Readings drawn from the quantum product state G_A(delta_a) G_B(delta_b):
/// independent normals of standard deviation sigma.
PairSamples sample_certain_shift(double delta_a, double delta_b, double sigma, std::size_t n, std::uint64_t seed);

/// min over (p, delta_A, delta_B) with p delta_A = mu_a and (1-p) delta_B = mu_b
/// of 2 sigma^2 + p delta_A^2 + (1-p) delta_B^2 - (mu_a - mu_b)^2.
///
/// The hit probability is optimized numerically (grid scan then golden
/// section). Throws std::invalid_argument for negative or non-finite means or
/// sigma <= 0.
double corpuscular_min_variance(double mu_a, double mu_b, double sigma);

/// Minimizing hit probability found by corpuscular_min_variance.
double corpuscular_optimal_p(double mu_a, double mu_b);

/// Bound for signed sample means: mirrors both means when they share a
/// negative sign; opposite signs leave no excess over 2 sigma^2.
double corpuscular_bound_for_means(double mean_a, double mean_b, double sigma);

enum class Verdict { kConsistentWithCorpuscular, kRejectsCorpuscular, kInconclusive };

std::string_view verdict_name(Verdict verdict);

struct EnsembleStats {
    /// Number of pairs; 0 for an exact moment report.
    std::size_t n = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double var_diff = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double bound = 0.0;
    double alpha = 0.05;
    Verdict verdict = Verdict::kInconclusive;
    std::uint64_t seed = 0;
};

struct CorpuscularityOptions {
    double alpha = 0.05;
    std::size_t resamples = 10000;
    std::uint64_t seed = 1;
};

/// Percentile-bootstrap test of the corpuscular variance bound.
///
/// ci_low and ci_high are the alpha and 1 - alpha bootstrap quantiles of the
/// sample Var(a - b). The verdict is
///   rejects-corpuscular   if ci_high < bound(sample means, sigma0),
///   inconclusive          if bound - 2 sigma0^2 < ci_high - var_diff (the
///                         corpuscular excess is smaller than the statistical
///                         margin, so no outcome could have rejected),
///   consistent            otherwise.
/// Throws std::invalid_argument for fewer than 100 pairs or sigma0 <= 0.
EnsembleStats corpuscularity_test(const PairSamples &samples, double sigma0, const CorpuscularityOptions &options = {});

/// Same verdict rules applied to exact moments (ci_low = ci_high = var_diff).
EnsembleStats corpuscularity_test(const PointerMoments &moments, double sigma0, double alpha = 0.05);

}  // namespace weakprobe

#endif  // WEAKPROBE_CORPUSCLE_H
