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
#ifndef WEAKPROBE_WAVEFUNCTION_H
#define WEAKPROBE_WAVEFUNCTION_H

#include <complex>
#include <span>
#include <vector>

#include "weakprobe/grid.h"

namespace weakprobe {

using Complex = std::complex<double>;

/// Complex amplitudes on a Grid. Amplitudes carry units of length^(-1/2), so
/// the squared norm is sum |amp|^2 * dx. Values are immutable once built.
class WaveFunction {
   public:
    WaveFunction(Grid grid, std::vector<Complex> amplitudes);

    const Grid &grid() const {
        return grid_;
    }
    std::span<const Complex> amplitudes() const {
        return amp_;
    }
    std::size_t size() const {
        return amp_.size();
    }
    Complex operator[](std::size_t k) const {
        return amp_[k];
    }

    double norm_squared() const;
    double norm() const;
    WaveFunction normalized() const;
    WaveFunction scaled(Complex factor) const;

    /// <this|other>, conjugate-linear in this.
    Complex inner(const WaveFunction &other) const;

    double density(std::size_t k) const {
        return std::norm(amp_[k]);
    }
    /// Probability in the half-open interval [a, b).
    double probability_in(double a, double b) const;

    double mean_position() const;
    double position_variance() const;
    /// Spectral estimate of <k>.
    double mean_wavenumber() const;

    /// Probability held in the outer `margin` points at either end of the grid.
    double edge_probability(std::size_t margin) const;

   private:
    Grid grid_;
    std::vector<Complex> amp_;
};

/// sqrt(sum |a - b|^2 dx). Both functions must live on the same grid.
double l2_distance(const WaveFunction &a, const WaveFunction &b);

/// Normalized Gaussian wavepacket exp(-(x-x0)^2/(4 sigma_x^2) + i k0 x).
///
/// Throws std::invalid_argument when sigma_x < 3*dx or when the interval
/// [x0 - 5 sigma_x, x0 + 5 sigma_x] is not contained in the grid.
WaveFunction make_gaussian_packet(const Grid &grid, double x0, double sigma_x, double k0);

/// Wavenumber giving a Gaussian packet of width sigma_x the mean kinetic
/// energy `energy`: k0^2/2 + 1/(8 sigma_x^2) = energy (hbar = m = 1).
double wavenumber_for_mean_energy(double energy, double sigma_x);

}  // namespace weakprobe

#endif  // WEAKPROBE_WAVEFUNCTION_H
