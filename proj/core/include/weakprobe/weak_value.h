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
#ifndef WEAKPROBE_WEAK_VALUE_H
#define WEAKPROBE_WEAK_VALUE_H

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "weakprobe/barrier.h"
#include "weakprobe/propagator.h"
#include "weakprobe/region.h"
#include "weakprobe/spin.h"
#include "weakprobe/wavefunction.h"

namespace weakprobe {

/// Smallest |<f|i>|^2 (of the normalized states) accepted before a weak value
/// is refused.
inline constexpr double kDefaultOverlapFloor = 1e-12;

/// <f|A|i> / <f|i>. Throws NumericalGuardError when the normalized overlap
/// squared falls below `overlap_floor`.
Complex weak_value(const SpinOperator &op, const SpinState &initial, const SpinState &final_state,
                   double overlap_floor = kDefaultOverlapFloor);

/// <f|A^n|i> / <f|i> for n >= 1.
Complex weak_moment(const SpinOperator &op, int n, const SpinState &initial, const SpinState &final_state,
                    double overlap_floor = kDefaultOverlapFloor);

/// Projector weak value <f|P|i> / <f|i> for states on a grid.
Complex weak_value(const RegionProjector &projector, const WaveFunction &initial, const WaveFunction &final_state,
                   double overlap_floor = kDefaultOverlapFloor);

/// Pre-selected state at t = 0 and post-selected state at t = T, with the
/// transition amplitude <f|U(T,0)|i>.
struct PrePostPair {
    WaveFunction initial;
    WaveFunction final_state;
    double total_time;
    Complex overlap;

    double success_probability() const {
        return std::norm(overlap);
    }
};

/// Builds a pair from explicit states, evolving `initial` to cfg.total_time()
/// to compute the overlap. Both states are normalized.
PrePostPair make_pre_post_pair(const WaveFunction &initial, const WaveFunction &final_state,
                               const BarrierSpec &barrier, const PropagatorConfig &cfg,
                               double overlap_floor = kDefaultOverlapFloor);

/// Post-selection on transmission: |f> is U(T,0)|i> projected onto
/// x >= barrier.right_edge() + offset and renormalized.
PrePostPair postselect_transmitted(const WaveFunction &initial, const BarrierSpec &barrier,
                                   const PropagatorConfig &cfg, double offset,
                                   double overlap_floor = kDefaultOverlapFloor);

/// No post-selection: |f> = U(T,0)|i>.
PrePostPair postselect_everything(const WaveFunction &initial, const BarrierSpec &barrier,
                                  const PropagatorConfig &cfg);

/// Conditional (pseudo-)probability density
///   value(t, x) = <f(t)|P_x|i(t)> / (<f(t)|i(t)> dx)
/// with i evolved forward from 0 and f evolved backward from T. The real part
/// is the conditional density; the imaginary part is kept alongside.
struct ConditionalDistribution {
    Grid grid;
    std::vector<double> times;
    /// re[j][k], im[j][k] for time j and grid point k.
    std::vector<std::vector<double>> re;
    std::vector<std::vector<double>> im;

    /// sum_x re(t_j, x) dx.
    double total(std::size_t j) const;
    /// sum over a <= x < b of re(t_j, x) dx.
    double weight(std::size_t j, double a, double b) const;
};

/// Evaluates the distribution at cfg.record_times. cfg.total_time() must equal
/// pair.total_time. Throws NumericalGuardError when the overlap floor or the
/// propagator guards are violated at any recorded time.
ConditionalDistribution conditional_distribution(const PrePostPair &pair, const BarrierSpec &barrier,
                                                 const PropagatorConfig &cfg,
                                                 double overlap_floor = kDefaultOverlapFloor);

/// Weak values of several region projectors sampled at the given step
/// indices, without storing full distributions.
struct RegionWeakValueSeries {
    std::vector<double> times;
    /// values[r][j]: region r at time j.
    std::vector<std::vector<Complex>> values;
};

RegionWeakValueSeries region_weak_values(const PrePostPair &pair, std::span<const std::pair<double, double>> regions,
                                         const BarrierSpec &barrier, const PropagatorConfig &cfg,
                                         std::span<const std::size_t> steps,
                                         double overlap_floor = kDefaultOverlapFloor);

/// Uniformly spaced sampling steps 0, s, 2s, ..., n_steps with at most
/// `max_samples` + 1 entries (the final step is always included).
std::vector<std::size_t> uniform_sample_steps(std::size_t n_steps, std::size_t max_samples);

/// Time integral over [0, T] of Re[P_[a,b)]_w(t), trapezoidal over
/// `max_samples` uniform samples. With no post-selection this is the ordinary
/// dwell time.
double conditional_dwell_time(const PrePostPair &pair, std::pair<double, double> region, const BarrierSpec &barrier,
                              const PropagatorConfig &cfg, std::size_t max_samples = 600,
                              double overlap_floor = kDefaultOverlapFloor);

}  // namespace weakprobe

#endif  // WEAKPROBE_WEAK_VALUE_H
