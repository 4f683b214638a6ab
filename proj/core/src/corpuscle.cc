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
#include "weakprobe/corpuscle.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace weakprobe {

namespace {

// Pairs (and bootstrap replicates) are drawn in fixed-size blocks, each with
// its own engine seeded from (master seed, block index), so results do not
// depend on how blocks are scheduled.
constexpr std::size_t kSampleBlock = 4096;
constexpr std::size_t kResampleBlock = 64;

std::mt19937_64 block_engine(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

__extension__ typedef unsigned __int128 Wide;

constexpr std::uint64_t kStreamPairs = 1;
constexpr std::uint64_t kStreamBootstrap = 2;

void require_sigma(double sigma, const char *where) {
    if (!std::isfinite(sigma) || !(sigma > 0)) {
        throw std::invalid_argument(std::string(where) + ": sigma must be positive");
    }
}

void require_means(double mu_a, double mu_b) {
    if (!std::isfinite(mu_a) || !std::isfinite(mu_b)) {
        throw std::invalid_argument("corpuscular bound: means must be finite");
    }
    if (mu_a < 0 || mu_b < 0) {
        throw std::invalid_argument("corpuscular bound: means must be non-negative (use corpuscular_bound_for_means)");
    }
}

// Excess p delta_A^2 + (1-p) delta_B^2 at fixed means, as a function of p.
double excess(double p, double mu_a, double mu_b) {
    return mu_a * mu_a / p + mu_b * mu_b / (1.0 - p);
}

// Minimizes excess over p in [0, 1]. A zero mean pins the optimum to the
// boundary where that pointer is never hit.
double optimize_p(double mu_a, double mu_b) {
    if (mu_a == 0.0 && mu_b == 0.0) {
        return 0.5;
    }
    if (mu_a == 0.0) {
        return 0.0;
    }
    if (mu_b == 0.0) {
        return 1.0;
    }
    constexpr int kScan = 1000;
    int best = 1;
    double best_val = INFINITY;
    for (int j = 1; j < kScan; j++) {
        double v = excess(static_cast<double>(j) / kScan, mu_a, mu_b);
        if (v < best_val) {
            best_val = v;
            best = j;
        }
    }
    double lo = static_cast<double>(best - 1) / kScan;
    double hi = static_cast<double>(best + 1) / kScan;
    lo = std::max(lo, 1e-300);
    hi = std::min(hi, 1.0 - 1e-16);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = excess(x1, mu_a, mu_b);
    double f2 = excess(x2, mu_a, mu_b);
    for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = excess(x1, mu_a, mu_b);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = excess(x2, mu_a, mu_b);
        }
    }
    return 0.5 * (lo + hi);
}

double min_excess(double mu_a, double mu_b) {
    double p = optimize_p(mu_a, mu_b);
    if (p == 0.0) {
        return mu_b * mu_b;
    }
    if (p == 1.0) {
        return mu_a * mu_a;
    }
    return excess(p, mu_a, mu_b);
}

// Linear-interpolated empirical quantile of sorted data.
double quantile(const std::vector<double> &sorted, double q) {
    double pos = q * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Verdict decide(double var_diff, double ci_high, double bound, double sigma0) {
    double scale = 2.0 * sigma0 * sigma0;
    double tiny = 1e-12 * std::max(scale, bound);
    if (ci_high < bound - tiny) {
        return Verdict::kRejectsCorpuscular;
    }
    if (bound - scale <= std::max(ci_high - var_diff, tiny)) {
        return Verdict::kInconclusive;
    }
    return Verdict::kConsistentWithCorpuscular;
}

}  // namespace

void CorpuscularModel::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("CorpuscularModel: p must lie in [0, 1]");
    }
    if (!std::isfinite(delta_a) || !std::isfinite(delta_b)) {
        throw std::invalid_argument("CorpuscularModel: shifts must be finite");
    }
    require_sigma(sigma, "CorpuscularModel");
    if (n < 1) {
        throw std::invalid_argument("CorpuscularModel: need at least one pair");
    }
}

double CorpuscularModel::variance_of_difference() const {
    double m = mean_a() - mean_b();
    return 2.0 * sigma * sigma + p * delta_a * delta_a + (1.0 - p) * delta_b * delta_b - m * m;
}

PairSamples simulate_corpuscular(const CorpuscularModel &model) {
    model.validate();
    PairSamples out;
    out.a.resize(model.n);
    out.b.resize(model.n);
    for (std::size_t start = 0, block = 0; start < model.n; start += kSampleBlock, block++) {
        auto rng = block_engine(model.seed, kStreamPairs, block);
        std::normal_distribution<double> noise(0.0, model.sigma);
        std::bernoulli_distribution hit_a(model.p);
        std::size_t end = std::min(model.n, start + kSampleBlock);
        for (std::size_t i = start; i < end; i++) {
            bool a_hit = hit_a(rng);
            double na = noise(rng);
            double nb = noise(rng);
            out.a[i] = na + (a_hit ? model.delta_a : 0.0);
            out.b[i] = nb + (a_hit ? 0.0 : model.delta_b);
        }
    }
    return out;
}

PairSamples sample_certain_shift(double delta_a, double delta_b, double sigma, std::size_t n, std::uint64_t seed) {
    require_sigma(sigma, "sample_certain_shift");
    if (n < 1) {
        throw std::invalid_argument("sample_certain_shift: need at least one pair");
    }
    PairSamples out;
    out.a.resize(n);
    out.b.resize(n);
    for (std::size_t start = 0, block = 0; start < n; start += kSampleBlock, block++) {
        auto rng = block_engine(seed, kStreamPairs, block);
        std::normal_distribution<double> noise(0.0, sigma);
        std::size_t end = std::min(n, start + kSampleBlock);
        for (std::size_t i = start; i < end; i++) {
            out.a[i] = delta_a + noise(rng);
            out.b[i] = delta_b + noise(rng);
        }
    }
    return out;
}

double corpuscular_min_variance(double mu_a, double mu_b, double sigma) {
    require_sigma(sigma, "corpuscular_min_variance");
    require_means(mu_a, mu_b);
    double d = mu_a - mu_b;
    return 2.0 * sigma * sigma + min_excess(mu_a, mu_b) - d * d;
}

double corpuscular_optimal_p(double mu_a, double mu_b) {
    require_means(mu_a, mu_b);
    return optimize_p(mu_a, mu_b);
}

double corpuscular_bound_for_means(double mean_a, double mean_b, double sigma) {
    require_sigma(sigma, "corpuscular_bound_for_means");
    if (!std::isfinite(mean_a) || !std::isfinite(mean_b)) {
        throw std::invalid_argument("corpuscular_bound_for_means: means must be finite");
    }
    if (mean_a * mean_b < 0.0) {
        return 2.0 * sigma * sigma;
    }
    return corpuscular_min_variance(std::abs(mean_a), std::abs(mean_b), sigma);
}

std::string_view verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::kConsistentWithCorpuscular:
            return "consistent-with-corpuscular";
        case Verdict::kRejectsCorpuscular:
            return "rejects-corpuscular";
        case Verdict::kInconclusive:
            return "inconclusive";
    }
    return "unknown";
}

EnsembleStats corpuscularity_test(const PairSamples &samples, double sigma0, const CorpuscularityOptions &options) {
    require_sigma(sigma0, "corpuscularity_test");
    std::size_t n = samples.size();
    if (samples.b.size() != n) {
        throw std::invalid_argument("corpuscularity_test: a and b sample counts differ");
    }
    if (n < 100) {
        throw std::invalid_argument("corpuscularity_test: need at least 100 pairs");
    }
    if (!(options.alpha > 0.0 && options.alpha < 0.5)) {
        throw std::invalid_argument("corpuscularity_test: alpha must lie in (0, 0.5)");
    }
    if (options.resamples < 100) {
        throw std::invalid_argument("corpuscularity_test: need at least 100 bootstrap resamples");
    }

    double sum_a = 0, sum_b = 0;
    for (std::size_t i = 0; i < n; i++) {
        sum_a += samples.a[i];
        sum_b += samples.b[i];
    }
    double mean_a = sum_a / static_cast<double>(n);
    double mean_b = sum_b / static_cast<double>(n);
    // Centering first keeps the one-pass resampled variance accurate.
    std::vector<double> d(n);
    double sum_sq = 0;
    for (std::size_t i = 0; i < n; i++) {
        d[i] = (samples.a[i] - samples.b[i]) - (mean_a - mean_b);
        sum_sq += d[i] * d[i];
    }
    auto nd = static_cast<double>(n);
    double var_diff = sum_sq / (nd - 1.0);

    std::vector<double> replicates(options.resamples);
    for (std::size_t start = 0, block = 0; start < options.resamples; start += kResampleBlock, block++) {
        auto rng = block_engine(options.seed, kStreamBootstrap, block);
        std::size_t end = std::min(options.resamples, start + kResampleBlock);
        for (std::size_t r = start; r < end; r++) {
            double s1 = 0, s2 = 0;
            for (std::size_t i = 0; i < n; i++) {
                // Multiply-shift maps a 64-bit draw onto [0, n) without division.
                auto idx = static_cast<std::size_t>((static_cast<Wide>(rng()) * n) >> 64);
                double v = d[idx];
                s1 += v;
                s2 += v * v;
            }
            replicates[r] = (s2 - s1 * s1 / nd) / (nd - 1.0);
        }
    }
    std::sort(replicates.begin(), replicates.end());

    EnsembleStats stats;
    stats.n = n;
    stats.mean_a = mean_a;
    stats.mean_b = mean_b;
    stats.var_diff = var_diff;
    stats.ci_low = std::min(quantile(replicates, options.alpha), var_diff);
    stats.ci_high = std::max(quantile(replicates, 1.0 - options.alpha), var_diff);
    stats.bound = corpuscular_bound_for_means(mean_a, mean_b, sigma0);
    stats.alpha = options.alpha;
    stats.seed = options.seed;
    stats.verdict = decide(var_diff, stats.ci_high, stats.bound, sigma0);
    return stats;
}

EnsembleStats corpuscularity_test(const PointerMoments &moments, double sigma0, double alpha) {
    require_sigma(sigma0, "corpuscularity_test");
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw std::invalid_argument("corpuscularity_test: alpha must lie in (0, 0.5)");
    }
    EnsembleStats stats;
    stats.n = 0;
    stats.mean_a = moments.mean_a;
    stats.mean_b = moments.mean_b;
    stats.var_diff = moments.var_diff;
    stats.ci_low = moments.var_diff;
    stats.ci_high = moments.var_diff;
    stats.bound = corpuscular_bound_for_means(moments.mean_a, moments.mean_b, sigma0);
    stats.alpha = alpha;
    stats.verdict = decide(moments.var_diff, moments.var_diff, stats.bound, sigma0);
    return stats;
}

}  // namespace weakprobe
