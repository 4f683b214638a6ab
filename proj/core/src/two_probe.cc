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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "weakprobe/errors.h"

namespace weakprobe {

namespace {

constexpr double kWeaknessWarning = 0.5;

const RegionTarget &region_of(const WeakProbe &probe, const char *label) {
    const auto *r = std::get_if<RegionTarget>(&probe.target);
    if (r == nullptr) {
        throw std::invalid_argument(std::string("two_probe_run: probe ") + label + " must target a region");
    }
    if (!(r->a < r->b)) {
        throw std::invalid_argument(std::string("two_probe_run: probe ") + label + " has an empty region");
    }
    return *r;
}

void check_probe(const WeakProbe &probe, const char *label) {
    if (!std::isfinite(probe.delta)) {
        throw std::invalid_argument(std::string("two_probe_run: probe ") + label + " has a non-finite delta");
    }
    if (probe.sign != 1 && probe.sign != -1) {
        throw std::invalid_argument(std::string("two_probe_run: probe ") + label + " sign must be +1 or -1");
    }
}

void check_window(const WeakProbe &probe, double total_time, const char *label) {
    double slack = 1e-9 * std::max(1.0, total_time);
    if (!(probe.t_begin >= -slack && probe.t_end <= total_time + slack && probe.t_begin < probe.t_end)) {
        std::ostringstream msg;
        msg << "two_probe_run: probe " << label << " window [" << probe.t_begin << ", " << probe.t_end
            << "] is not inside [0, " << total_time << "]";
        throw std::invalid_argument(msg.str());
    }
}

void add_weakness_warning(const WeakProbe &probe, double sigma, const char *label, std::vector<std::string> &out) {
    double w = std::abs(probe.weakness(sigma));
    if (w > kWeaknessWarning) {
        std::ostringstream msg;
        msg << "probe " << label << ": delta/sigma = " << w << " exceeds " << kWeaknessWarning
            << "; first-order shifts may be inaccurate";
        out.push_back(msg.str());
    }
}

TwoProbeResult finish(Complex weak_a, Complex weak_b, const WeakProbe &probe_a, const WeakProbe &probe_b,
                      const TwoProbeOptions &options, std::vector<std::string> warnings) {
    double shift_a = probe_a.sign * probe_a.delta * weak_a.real();
    double shift_b = probe_b.sign * probe_b.delta * weak_b.real();
    JointPointerState joint(JointForm::kTwoProbe, options.sigma, {{GaussianTerm{1.0, shift_a, shift_b}}}, 1.0,
                            options.pointer_points);
    PointerMoments moments = joint.moments();
    EnsembleStats stats = corpuscularity_test(moments, options.sigma);
    return TwoProbeResult{std::move(joint), moments,  stats,   weak_a,           weak_b,
                          shift_a,          shift_b,  shift_a + shift_b, std::move(warnings)};
}

// Evolves psi from step `from` to step `to` (towards smaller steps when
// backward).
WaveFunction advance(const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg,
                     std::size_t from, std::size_t to, bool backward) {
    std::size_t count = backward ? from - to : to - from;
    if (count == 0) {
        return psi;
    }
    PropagatorConfig seg = cfg;
    seg.n_steps = count;
    seg.record_times.clear();
    return evolve(psi, barrier, seg, backward);
}

// (1 + (z - 1) P) psi.
WaveFunction kick(const WaveFunction &psi, const RegionProjector &region, Complex z) {
    std::vector<Complex> amp(psi.amplitudes().begin(), psi.amplitudes().end());
    for (std::size_t k = region.first(); k < region.last(); k++) {
        amp[k] *= z;
    }
    return WaveFunction(psi.grid(), std::move(amp));
}

}  // namespace

std::vector<std::size_t> probe_kick_steps(const WeakProbe &probe, double dt, std::size_t kicks) {
    if (kicks == 0) {
        throw std::invalid_argument("probe_kick_steps: need at least one kick");
    }
    if (!(dt > 0) || !(probe.t_begin < probe.t_end)) {
        throw std::invalid_argument("probe_kick_steps: need dt > 0 and a non-empty window");
    }
    std::vector<std::size_t> steps(kicks);
    double width = (probe.t_end - probe.t_begin) / static_cast<double>(kicks);
    for (std::size_t j = 0; j < kicks; j++) {
        double t = probe.t_begin + (static_cast<double>(j) + 0.5) * width;
        steps[j] = static_cast<std::size_t>(std::llround(std::max(0.0, t) / dt));
    }
    return steps;
}

TwoProbeResult two_probe_run(const PrePostPair &pair, const WeakProbe &probe_a, const WeakProbe &probe_b,
                             const BarrierSpec &barrier, const PropagatorConfig &cfg,
                             const TwoProbeOptions &options) {
    check_probe(probe_a, "A");
    check_probe(probe_b, "B");
    const RegionTarget &ra = region_of(probe_a, "A");
    const RegionTarget &rb = region_of(probe_b, "B");
    double total = cfg.total_time();
    check_window(probe_a, total, "A");
    check_window(probe_b, total, "B");

    auto steps_a = probe_kick_steps(probe_a, cfg.dt, options.kicks);
    auto steps_b = probe_kick_steps(probe_b, cfg.dt, options.kicks);
    std::vector<std::size_t> all(steps_a);
    all.insert(all.end(), steps_b.begin(), steps_b.end());
    std::pair<double, double> regions[2] = {{ra.a, ra.b}, {rb.a, rb.b}};
    auto series = region_weak_values(pair, regions, barrier, cfg, all, options.overlap_floor);

    auto average = [&](std::size_t r, const std::vector<std::size_t> &steps) {
        Complex sum = 0.0;
        for (std::size_t s : steps) {
            double t = static_cast<double>(s) * cfg.dt;
            auto it = std::lower_bound(series.times.begin(), series.times.end(), t - 0.5 * cfg.dt);
            sum += series.values[r][static_cast<std::size_t>(it - series.times.begin())];
        }
        return sum / static_cast<double>(steps.size());
    };
    std::vector<std::string> warnings;
    add_weakness_warning(probe_a, options.sigma, "A", warnings);
    add_weakness_warning(probe_b, options.sigma, "B", warnings);
    return finish(average(0, steps_a), average(1, steps_b), probe_a, probe_b, options, std::move(warnings));
}

TwoProbeResult two_probe_run(const SpinState &initial, const SpinState &final_state, const WeakProbe &probe_a,
                             const WeakProbe &probe_b, const TwoProbeOptions &options) {
    check_probe(probe_a, "A");
    check_probe(probe_b, "B");
    const auto *op_a = std::get_if<SpinOperator>(&probe_a.target);
    const auto *op_b = std::get_if<SpinOperator>(&probe_b.target);
    if (op_a == nullptr || op_b == nullptr) {
        throw std::invalid_argument("two_probe_run: spin overload needs spin-component targets");
    }
    Complex wa = weak_value(*op_a, initial, final_state, options.overlap_floor);
    Complex wb = weak_value(*op_b, initial, final_state, options.overlap_floor);
    std::vector<std::string> warnings;
    add_weakness_warning(probe_a, options.sigma, "A", warnings);
    add_weakness_warning(probe_b, options.sigma, "B", warnings);
    return finish(wa, wb, probe_a, probe_b, options, std::move(warnings));
}

KickAmplitudes kick_amplitudes(const PrePostPair &pair, const WeakProbe &probe_a, const WeakProbe &probe_b,
                               const BarrierSpec &barrier, const PropagatorConfig &cfg, std::size_t kicks) {
    const RegionTarget &ra = region_of(probe_a, "A");
    const RegionTarget &rb = region_of(probe_b, "B");
    double total = cfg.total_time();
    check_window(probe_a, total, "A");
    check_window(probe_b, total, "B");
    if (std::abs(total - pair.total_time) > 1e-9 * std::max(1.0, total)) {
        throw std::invalid_argument("kick_amplitudes: propagator run length does not match the pre/post pair");
    }
    auto steps_a = probe_kick_steps(probe_a, cfg.dt, kicks);
    auto steps_b = probe_kick_steps(probe_b, cfg.dt, kicks);
    if (steps_a.back() > steps_b.front()) {
        throw std::invalid_argument("kick_amplitudes: probe A window must end before probe B window begins");
    }
    std::size_t split = steps_a.back();
    const Grid &grid = pair.initial.grid();
    RegionProjector pa(grid, ra.a, ra.b);
    RegionProjector pb(grid, rb.a, rb.b);

    std::size_t na = kicks + 1;
    std::size_t nb = kicks + 1;
    auto root = [](std::size_t j, std::size_t n) {
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    };

    std::vector<WaveFunction> forward;
    forward.reserve(na);
    for (std::size_t j = 0; j < na; j++) {
        Complex z = root(j, na);
        WaveFunction psi = pair.initial;
        std::size_t at = 0;
        for (std::size_t s : steps_a) {
            psi = advance(psi, barrier, cfg, at, s, false);
            psi = kick(psi, pa, z);
            at = s;
        }
        forward.push_back(std::move(psi));
    }
    std::vector<WaveFunction> backward;
    backward.reserve(nb);
    for (std::size_t l = 0; l < nb; l++) {
        Complex z = std::conj(root(l, nb));
        WaveFunction phi = pair.final_state;
        std::size_t at = cfg.n_steps;
        for (auto it = steps_b.rbegin(); it != steps_b.rend(); ++it) {
            phi = advance(phi, barrier, cfg, at, *it, true);
            phi = kick(phi, pb, z);
            at = *it;
        }
        phi = advance(phi, barrier, cfg, at, split, true);
        backward.push_back(std::move(phi));
    }

    // F(z_a, z_b) / <f|U|i>, then the inverse 2-D DFT over the roots.
    std::vector<std::vector<Complex>> values(na, std::vector<Complex>(nb));
    for (std::size_t j = 0; j < na; j++) {
        for (std::size_t l = 0; l < nb; l++) {
            values[j][l] = backward[l].inner(forward[j]) / pair.overlap;
        }
    }
    KickAmplitudes out{kicks, kicks, std::vector<std::vector<Complex>>(na, std::vector<Complex>(nb, 0.0)),
                       std::norm(pair.overlap)};
    for (std::size_t m = 0; m < na; m++) {
        for (std::size_t n = 0; n < nb; n++) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < na; j++) {
                for (std::size_t l = 0; l < nb; l++) {
                    acc += values[j][l] * std::conj(root(j * m % na, na)) * std::conj(root(l * n % nb, nb));
                }
            }
            out.c[m][n] = acc / static_cast<double>(na * nb);
        }
    }
    return out;
}

JointPointerState assemble_kicked_state(const KickAmplitudes &amps, const WeakProbe &probe_a,
                                        const WeakProbe &probe_b, double sigma, std::size_t points) {
    if (amps.c.size() != amps.kicks_a + 1) {
        throw std::invalid_argument("assemble_kicked_state: malformed amplitude table");
    }
    double da = probe_a.sign * probe_a.delta / static_cast<double>(amps.kicks_a);
    double db = probe_b.sign * probe_b.delta / static_cast<double>(amps.kicks_b);
    JointPointerState::Branch terms;
    for (std::size_t m = 0; m <= amps.kicks_a; m++) {
        if (amps.c[m].size() != amps.kicks_b + 1) {
            throw std::invalid_argument("assemble_kicked_state: malformed amplitude table");
        }
        for (std::size_t n = 0; n <= amps.kicks_b; n++) {
            terms.push_back(GaussianTerm{amps.c[m][n], static_cast<double>(m) * da, static_cast<double>(n) * db});
        }
    }
    // Normalize with the exact Gaussian overlaps; the pointer-coupled success
    // probability is the uncoupled one times this norm.
    double norm2 = 0.0;
    for (const auto &s : terms) {
        for (const auto &t : terms) {
            double oa = std::exp(-(s.center_a - t.center_a) * (s.center_a - t.center_a) / (8.0 * sigma * sigma));
            double ob = std::exp(-(s.center_b - t.center_b) * (s.center_b - t.center_b) / (8.0 * sigma * sigma));
            norm2 += (std::conj(s.coeff) * t.coeff).real() * oa * ob;
        }
    }
    if (!(norm2 > 0)) {
        throw NumericalGuardError("assemble_kicked_state: post-selected pointer state vanishes");
    }
    double k = 1.0 / std::sqrt(norm2);
    for (auto &t : terms) {
        t.coeff *= k;
    }
    double prob = std::clamp(amps.base_probability * norm2, 1e-300, 1.0);
    return JointPointerState(JointForm::kTwoProbe, sigma, {std::move(terms)}, prob, points);
}

}  // namespace weakprobe
