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
#ifndef WEAKPROBE_PROPAGATOR_H
#define WEAKPROBE_PROPAGATOR_H

#include <cstddef>
#include <functional>
#include <span>
#include <memory>
#include <vector>

#include "weakprobe/barrier.h"
#include "weakprobe/wavefunction.h"

namespace weakprobe {

enum class Scheme {
    /// Strang-split Fourier method, exp(-iV dt/2) exp(-iT dt) exp(-iV dt/2).
    kSplitStep,
    /// Diagonal [2/2] Pade approximant of exp(-iH dt) with a high-order
    /// periodic finite-difference Laplacian, applied as two banded implicit
    /// solves per step. Exactly unitary; fourth order in dt.
    kImplicitFd,
};

const char *scheme_name(Scheme scheme);
/// Parses "split-step" or "implicit-fd".
Scheme parse_scheme(const char *name);

struct PropagatorConfig {
    double dt = 0.0015625;
    std::size_t n_steps = 0;
    Scheme scheme = Scheme::kSplitStep;
    /// Elapsed times at which snapshots are kept. Each must be an integer
    /// multiple of dt no larger than n_steps*dt.
    std::vector<double> record_times;
    /// Accuracy order of the finite-difference Laplacian (even, 2..16).
    int fd_order = 16;
    /// Points at each grid end that form the edge-density guard region.
    std::size_t edge_margin = 0;
    /// Maximum probability allowed in the guard region.
    double edge_tolerance = 1e-8;
    /// Maximum |norm^2 - 1| drift allowed before the run is rejected.
    double norm_tolerance = 1e-6;

    double total_time() const {
        return dt * static_cast<double>(n_steps);
    }
    /// Default guard margin of n/32 points when edge_margin is 0.
    std::size_t resolved_edge_margin(std::size_t n) const;
    /// Index of each record time in steps; validates the record list.
    std::vector<std::size_t> record_steps() const;
};

/// Snapshot of the state after `step` steps. For backward runs time is
/// negative (-step*|dt|). Global phase is kept.
struct Snapshot {
    double time;
    std::size_t step;
    WaveFunction psi;
};

/// Evolves psi forward by n_steps*dt under H = -1/2 d^2/dx^2 + V(x),
/// returning snapshots at the requested record times (ascending).
///
/// Throws NumericalGuardError when probability reaches the edge guard
/// region or the norm drifts beyond cfg.norm_tolerance.
std::vector<Snapshot> propagate(const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg);

/// Same as propagate with dt negated.
std::vector<Snapshot> propagate_backward(
    const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg);

using SnapshotVisitor = std::function<void(Snapshot)>;

/// Streams snapshots at the given step indices (sorted, deduplicated) to
/// `visit` instead of collecting them. Guards as in propagate.
void visit_steps(const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg, bool backward,
                 std::span<const std::size_t> steps, const SnapshotVisitor &visit);

/// Evolves psi by n_steps*dt (backwards in time when `backward` is set) and
/// returns only the final state. Guards are checked as in propagate.
WaveFunction evolve(const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg,
                    bool backward = false);

/// Coefficients c_0..c_p of the order-2p central difference second
/// derivative: f'' ~ (c_0 f_i + sum_j c_j (f_{i+j} + f_{i-j})) / dx^2.
std::vector<double> second_derivative_stencil(int order);

/// Stepper for callers that need to act on the state between steps, such as
/// impulsive probe kicks. dt may be negative.
class Propagator {
   public:
    Propagator(const Grid &grid, const BarrierSpec &barrier, double dt, Scheme scheme, int fd_order = 16);
    ~Propagator();
    Propagator(Propagator &&) noexcept;
    Propagator &operator=(Propagator &&) noexcept;
    Propagator(const Propagator &) = delete;
    Propagator &operator=(const Propagator &) = delete;

    /// Advances amp (sampled on the propagator's grid) by `steps` steps.
    void advance(std::vector<Complex> &amp, std::size_t steps);

    const Grid &grid() const;
    double dt() const;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// <psi|H|psi> with the spectral kinetic energy.
double energy_expectation(const WaveFunction &psi, const BarrierSpec &barrier);
/// <psi|-1/2 d^2/dx^2|psi> evaluated spectrally.
double kinetic_energy(const WaveFunction &psi);

}  // namespace weakprobe

#endif  // WEAKPROBE_PROPAGATOR_H
