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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "weakprobe/errors.h"

namespace weakprobe {

namespace {

void check_overlap(Complex overlap, double norm_f, double norm_i, double floor, const char *where) {
    double normalized = std::norm(overlap) / (norm_f * norm_i);
    if (!std::isfinite(normalized) || normalized < floor) {
        std::ostringstream msg;
        msg.precision(6);
        msg << where << ": |<f|i>|^2 = " << normalized << " is below the overlap floor " << floor;
        throw NumericalGuardError(msg.str());
    }
}

Complex spin_overlap(const SpinState &initial, const SpinState &final_state, double floor) {
    if (initial.size() != final_state.size()) {
        throw std::invalid_argument("weak_value: state dimensions differ");
    }
    Complex overlap = final_state.dot(initial);  // conjugates the first argument
    check_overlap(overlap, final_state.squaredNorm(), initial.squaredNorm(), floor, "weak_value");
    return overlap;
}

void require_matching_time(const PrePostPair &pair, const PropagatorConfig &cfg) {
    double total = cfg.total_time();
    if (std::abs(total - pair.total_time) > 1e-9 * std::max(1.0, std::abs(total))) {
        throw std::invalid_argument("weak values: propagator run length does not match the pre/post pair");
    }
}

// Backward-evolved final state at each requested forward step, in the order
// of `steps` (which must be sorted and unique).
std::vector<WaveFunction> backward_states(const PrePostPair &pair, const BarrierSpec &barrier,
                                          const PropagatorConfig &cfg, const std::vector<std::size_t> &steps) {
    std::vector<std::size_t> back_steps;
    back_steps.reserve(steps.size());
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        back_steps.push_back(cfg.n_steps - *it);
    }
    std::vector<WaveFunction> out(steps.size(), pair.final_state);
    std::size_t filled = 0;
    visit_steps(pair.final_state, barrier, cfg, true, back_steps, [&](Snapshot s) {
        out[steps.size() - 1 - filled] = std::move(s.psi);
        filled++;
    });
    return out;
}

std::vector<std::size_t> sorted_steps(std::span<const std::size_t> steps, std::size_t n_steps) {
    std::vector<std::size_t> out(steps.begin(), steps.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && out.back() > n_steps) {
        throw std::invalid_argument("weak values: sample step beyond the end of the run");
    }
    return out;
}

}  // namespace

Complex weak_value(const SpinOperator &op, const SpinState &initial, const SpinState &final_state,
                   double overlap_floor) {
    return weak_moment(op, 1, initial, final_state, overlap_floor);
}

Complex weak_moment(const SpinOperator &op, int n, const SpinState &initial, const SpinState &final_state,
                    double overlap_floor) {
    if (n < 1) {
        throw std::invalid_argument("weak_moment: power must be at least 1");
    }
    if (op.rows() != op.cols() || op.rows() != initial.size()) {
        throw std::invalid_argument("weak_moment: operator and state dimensions differ");
    }
    Complex overlap = spin_overlap(initial, final_state, overlap_floor);
    SpinState v = initial;
    for (int p = 0; p < n; p++) {
        v = op * v;
    }
    return final_state.dot(v) / overlap;
}

Complex weak_value(const RegionProjector &projector, const WaveFunction &initial, const WaveFunction &final_state,
                   double overlap_floor) {
    Complex overlap = final_state.inner(initial);
    check_overlap(overlap, final_state.norm_squared(), initial.norm_squared(), overlap_floor, "weak_value");
    return projector.matrix_element(final_state, initial) / overlap;
}

PrePostPair make_pre_post_pair(const WaveFunction &initial, const WaveFunction &final_state,
                               const BarrierSpec &barrier, const PropagatorConfig &cfg, double overlap_floor) {
    if (!(initial.grid() == final_state.grid())) {
        throw std::invalid_argument("make_pre_post_pair: grids differ");
    }
    WaveFunction i = initial.normalized();
    WaveFunction f = final_state.normalized();
    WaveFunction evolved = evolve(i, barrier, cfg);
    Complex overlap = f.inner(evolved);
    check_overlap(overlap, 1.0, 1.0, overlap_floor, "make_pre_post_pair");
    return PrePostPair{std::move(i), std::move(f), cfg.total_time(), overlap};
}

PrePostPair postselect_transmitted(const WaveFunction &initial, const BarrierSpec &barrier,
                                   const PropagatorConfig &cfg, double offset, double overlap_floor) {
    WaveFunction i = initial.normalized();
    WaveFunction evolved = evolve(i, barrier, cfg);
    const Grid &g = i.grid();
    RegionProjector right(g, barrier.right_edge() + offset, g.x_max());
    WaveFunction projected = right.apply(evolved);
    double weight = projected.norm_squared();
    if (!(weight > 0) || weight < overlap_floor) {
        std::ostringstream msg;
        msg << "postselect_transmitted: transmitted probability " << weight << " is below the overlap floor "
            << overlap_floor;
        throw NumericalGuardError(msg.str());
    }
    WaveFunction f = projected.normalized();
    Complex overlap = f.inner(evolved);
    return PrePostPair{std::move(i), std::move(f), cfg.total_time(), overlap};
}

PrePostPair postselect_everything(const WaveFunction &initial, const BarrierSpec &barrier,
                                  const PropagatorConfig &cfg) {
    WaveFunction i = initial.normalized();
    WaveFunction evolved = evolve(i, barrier, cfg);
    WaveFunction f = evolved.normalized();
    Complex overlap = f.inner(evolved);
    return PrePostPair{std::move(i), std::move(f), cfg.total_time(), overlap};
}

double ConditionalDistribution::total(std::size_t j) const {
    double sum = 0.0;
    for (double v : re.at(j)) {
        sum += v;
    }
    return sum * grid.dx();
}

double ConditionalDistribution::weight(std::size_t j, double a, double b) const {
    RegionProjector region(grid, a, b);
    const auto &row = re.at(j);
    double sum = 0.0;
    for (std::size_t k = region.first(); k < region.last(); k++) {
        sum += row[k];
    }
    return sum * grid.dx();
}

ConditionalDistribution conditional_distribution(const PrePostPair &pair, const BarrierSpec &barrier,
                                                 const PropagatorConfig &cfg, double overlap_floor) {
    require_matching_time(pair, cfg);
    std::vector<std::size_t> steps = cfg.record_steps();
    std::vector<WaveFunction> finals = backward_states(pair, barrier, cfg, steps);

    ConditionalDistribution out{pair.initial.grid(), {}, {}, {}};
    out.times.reserve(steps.size());
    std::size_t j = 0;
    visit_steps(pair.initial, barrier, cfg, false, steps, [&](Snapshot s) {
        const WaveFunction &f = finals[j];
        Complex overlap = f.inner(s.psi);
        check_overlap(overlap, f.norm_squared(), s.psi.norm_squared(), overlap_floor, "conditional_distribution");
        Complex inv = 1.0 / overlap;
        std::size_t n = s.psi.size();
        std::vector<double> re(n);
        std::vector<double> im(n);
        for (std::size_t k = 0; k < n; k++) {
            Complex v = std::conj(f[k]) * s.psi[k] * inv;
            re[k] = v.real();
            im[k] = v.imag();
        }
        out.times.push_back(s.time);
        out.re.push_back(std::move(re));
        out.im.push_back(std::move(im));
        j++;
    });
    return out;
}

RegionWeakValueSeries region_weak_values(const PrePostPair &pair, std::span<const std::pair<double, double>> regions,
                                         const BarrierSpec &barrier, const PropagatorConfig &cfg,
                                         std::span<const std::size_t> steps, double overlap_floor) {
    require_matching_time(pair, cfg);
    std::vector<std::size_t> sorted = sorted_steps(steps, cfg.n_steps);
    std::vector<RegionProjector> projectors;
    projectors.reserve(regions.size());
    for (const auto &[a, b] : regions) {
        projectors.emplace_back(pair.initial.grid(), a, b);
    }
    std::vector<WaveFunction> finals = backward_states(pair, barrier, cfg, sorted);

    RegionWeakValueSeries out;
    out.values.assign(regions.size(), {});
    std::size_t j = 0;
    visit_steps(pair.initial, barrier, cfg, false, sorted, [&](Snapshot s) {
        const WaveFunction &f = finals[j];
        Complex overlap = f.inner(s.psi);
        check_overlap(overlap, f.norm_squared(), s.psi.norm_squared(), overlap_floor, "region_weak_values");
        for (std::size_t r = 0; r < projectors.size(); r++) {
            out.values[r].push_back(projectors[r].matrix_element(f, s.psi) / overlap);
        }
        out.times.push_back(s.time);
        j++;
    });
    return out;
}

std::vector<std::size_t> uniform_sample_steps(std::size_t n_steps, std::size_t max_samples) {
    if (max_samples == 0) {
        throw std::invalid_argument("uniform_sample_steps: need at least one sample");
    }
    std::size_t stride = std::max<std::size_t>(1, (n_steps + max_samples - 1) / max_samples);
    std::vector<std::size_t> steps;
    for (std::size_t s = 0; s < n_steps; s += stride) {
        steps.push_back(s);
    }
    steps.push_back(n_steps);
    return steps;
}

double conditional_dwell_time(const PrePostPair &pair, std::pair<double, double> region, const BarrierSpec &barrier,
                              const PropagatorConfig &cfg, std::size_t max_samples, double overlap_floor) {
    std::vector<std::size_t> steps = uniform_sample_steps(cfg.n_steps, max_samples);
    auto series = region_weak_values(pair, std::span(&region, 1), barrier, cfg, steps, overlap_floor);
    const auto &t = series.times;
    const auto &v = series.values[0];
    double integral = 0.0;
    for (std::size_t j = 1; j < t.size(); j++) {
        integral += 0.5 * (t[j] - t[j - 1]) * (v[j].real() + v[j - 1].real());
    }
    return integral;
}

}  // namespace weakprobe
