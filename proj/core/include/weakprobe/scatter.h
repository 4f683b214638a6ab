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
#ifndef WEAKPROBE_SCATTER_H
#define WEAKPROBE_SCATTER_H

#include <complex>

#include "weakprobe/barrier.h"

namespace weakprobe {

enum class Incidence { kFromLeft, kFromRight };

/// Stationary scattering amplitudes at a single energy (hbar = m = 1).
///
/// Phase convention: for incidence from the left the stationary state is
///   e^{ikx} + r e^{-ikx}  left of the barrier,
///   t e^{ikx}             right of the barrier,
/// with x the absolute coordinate. An empty potential gives t = 1, r = 0.
/// The free phase accumulated across the barrier span d is factored out
/// explicitly: traversal_phase() = arg(t) + k d, and every delay in this
/// library is a derivative of that phase.
struct ScatterResult {
    std::complex<double> t;
    std::complex<double> r;
    double energy;
    double k;
    /// Decay constant sqrt(2(V - E)) inside the tallest segment when E lies
    /// below it; zero otherwise.
    double kappa;
    /// Barrier span d used for the free-phase factor.
    double span;

    double transmission() const {
        return std::norm(t);
    }
    double reflection() const {
        return std::norm(r);
    }
    double traversal_phase() const;
};

/// Transfer-matrix solution for the piecewise-constant potential.
///
/// Throws std::invalid_argument for E <= 0 or E equal to any segment height
/// (zero local wavenumber), and NumericalGuardError if the transfer matrix
/// overflows (barrier too opaque for double precision).
ScatterResult transfer_matrix_amplitudes(
    double energy, const BarrierSpec &barrier, Incidence incidence = Incidence::kFromLeft);

struct GroupDelay {
    /// Richardson-extrapolated d(traversal_phase)/dE.
    double delay;
    /// Central-difference estimates at step h and h/2.
    double coarse;
    double fine;
    double step;
};

/// Group (phase) delay d/dE [arg t + k d], from centred differences at two
/// step sizes with a Richardson check. The step is halved until the two
/// estimates agree to `rel_tol`; NumericalGuardError (quoting both
/// estimates) if that never happens.
GroupDelay group_delay(double energy, const BarrierSpec &barrier, double rel_tol = 1e-7);

}  // namespace weakprobe

#endif  // WEAKPROBE_SCATTER_H
