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
#ifndef WEAKPROBE_TWO_PROBE_H
#define WEAKPROBE_TWO_PROBE_H

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "weakprobe/corpuscle.h"
#include "weakprobe/pointer.h"
#include "weakprobe/spin.h"
#include "weakprobe/weak_value.h"

namespace weakprobe {

/// Spatial probe target: projector onto [a, b).
struct RegionTarget {
    double a;
    double b;
};

/// Weak von Neumann probe. A particle that spends the whole window inside the
/// target moves the pointer by sign * delta; the impulsive coupling is spread
/// uniformly over [t_begin, t_end].
struct WeakProbe {
    std::variant<RegionTarget, SpinOperator> target;
    double delta = 0.1;
    double t_begin = 0.0;
    double t_end = 0.0;
    int sign = 1;

    double weakness(double sigma) const {
        return delta / sigma;
    }
};

struct TwoProbeResult {
    JointPointerState joint;
    PointerMoments moments;
    EnsembleStats stats;
    /// Time-averaged complex weak value of each target over its window.
    Complex weak_a;
    Complex weak_b;
    /// Signed mean pointer shifts.
    double shift_a;
    double shift_b;
    /// shift_a + shift_b: the net internal-state change when the probes pump
    /// in opposite directions.
    double net_internal_shift;
    std::vector<std::string> warnings;
};

struct TwoProbeOptions {
    /// Pointer width sigma (also the calibration width for the verdict).
    double sigma = 1.0;
    /// Kicks per window; the window average is the midpoint rule on this many
    /// sub-intervals.
    std::size_t kicks = 16;
    std::size_t pointer_points = 512;
    double overlap_floor = kDefaultOverlapFloor;
};

/// Midpoint kick steps for a window, rounded to the propagator step grid.
std::vector<std::size_t> probe_kick_steps(const WeakProbe &probe, double dt, std::size_t kicks);

/// First-order two-probe run for region probes on a tunnelling pair.
///
/// Each pointer moves by sign * delta * Re <P>_w averaged over its window; the
/// joint state is the normalized product of the two shifted Gaussians.
/// Throws std::invalid_argument for windows outside [0, T] or non-region
/// targets; NumericalGuardError for overlap-floor violations.
TwoProbeResult two_probe_run(const PrePostPair &pair, const WeakProbe &probe_a, const WeakProbe &probe_b,
                             const BarrierSpec &barrier, const PropagatorConfig &cfg,
                             const TwoProbeOptions &options = {});

/// First-order two-probe run with spin-component targets.
TwoProbeResult two_probe_run(const SpinState &initial, const SpinState &final_state, const WeakProbe &probe_a,
                             const WeakProbe &probe_b, const TwoProbeOptions &options = {});

/// Amplitudes c[m][n] for pointer A being kicked m times and pointer B n
/// times, normalized by <f|U(T,0)|i>. They do not depend on delta.
struct KickAmplitudes {
    std::size_t kicks_a;
    std::size_t kicks_b;
    std::vector<std::vector<Complex>> c;
    /// |<f|U(T,0)|i>|^2 without any coupling.
    double base_probability;
};

/// All-orders impulsive evaluation: the window coupling exp(-i (delta/M) p P)
/// is applied at each kick time. Amplitudes come from evaluating the
/// generating polynomial at roots of unity (one forward run per A sample, one
/// backward run per B sample) and inverting the DFT. Windows must be
/// disjoint with probe A first.
KickAmplitudes kick_amplitudes(const PrePostPair &pair, const WeakProbe &probe_a, const WeakProbe &probe_b,
                               const BarrierSpec &barrier, const PropagatorConfig &cfg, std::size_t kicks);

/// Post-selected joint pointer state sum c[m][n] G_A(m dA) G_B(n dB) with
/// dA = sign_a delta_a / kicks, dB likewise.
JointPointerState assemble_kicked_state(const KickAmplitudes &amps, const WeakProbe &probe_a,
                                        const WeakProbe &probe_b, double sigma, std::size_t points = 512);

}  // namespace weakprobe

#endif  // WEAKPROBE_TWO_PROBE_H
