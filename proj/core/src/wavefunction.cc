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
#include "weakprobe/wavefunction.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.h"

namespace weakprobe {

WaveFunction::WaveFunction(Grid grid, std::vector<Complex> amplitudes)
    : grid_(std::move(grid)), amp_(std::move(amplitudes)) {
    if (amp_.size() != grid_.size()) {
        throw std::invalid_argument("WaveFunction: amplitude count does not match grid size");
    }
}

double WaveFunction::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amp_) {
        total += std::norm(a);
    }
    return total * grid_.dx();
}

double WaveFunction::norm() const {
    return std::sqrt(norm_squared());
}

WaveFunction WaveFunction::normalized() const {
    double n = norm();
    if (!(n > 0) || !std::isfinite(n)) {
        throw std::invalid_argument("WaveFunction: cannot normalize a zero or non-finite state");
    }
    return scaled(1.0 / n);
}

WaveFunction WaveFunction::scaled(Complex factor) const {
    std::vector<Complex> out(amp_);
    for (auto &a : out) {
        a *= factor;
    }
    return WaveFunction(grid_, std::move(out));
}

Complex WaveFunction::inner(const WaveFunction &other) const {
    if (!(grid_ == other.grid_)) {
        throw std::invalid_argument("WaveFunction::inner: grids differ");
    }
    Complex total = 0.0;
    for (std::size_t k = 0; k < amp_.size(); k++) {
        total += std::conj(amp_[k]) * other.amp_[k];
    }
    return total * grid_.dx();
}

double WaveFunction::probability_in(double a, double b) const {
    double total = 0.0;
    for (std::size_t k = 0; k < amp_.size(); k++) {
        double x = grid_.x(k);
        if (x >= a && x < b) {
            total += std::norm(amp_[k]);
        }
    }
    return total * grid_.dx();
}

double WaveFunction::mean_position() const {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < amp_.size(); k++) {
        double p = std::norm(amp_[k]);
        num += p * grid_.x(k);
        den += p;
    }
    return num / den;
}

double WaveFunction::position_variance() const {
    double mean = mean_position();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < amp_.size(); k++) {
        double p = std::norm(amp_[k]);
        double d = grid_.x(k) - mean;
        num += p * d * d;
        den += p;
    }
    return num / den;
}

double WaveFunction::mean_wavenumber() const {
    std::vector<Complex> spectrum(amp_);
    internal::Fft fft(spectrum.size());
    fft.forward(spectrum);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); k++) {
        double p = std::norm(spectrum[k]);
        num += p * grid_.wavenumber(k);
        den += p;
    }
    return num / den;
}

double WaveFunction::edge_probability(std::size_t margin) const {
    std::size_t n = amp_.size();
    margin = std::min(margin, n / 2);
    double total = 0.0;
    for (std::size_t k = 0; k < margin; k++) {
        total += std::norm(amp_[k]) + std::norm(amp_[n - 1 - k]);
    }
    return total * grid_.dx();
}

double l2_distance(const WaveFunction &a, const WaveFunction &b) {
    if (!(a.grid() == b.grid())) {
        throw std::invalid_argument("l2_distance: grids differ");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < a.size(); k++) {
        total += std::norm(a[k] - b[k]);
    }
    return std::sqrt(total * a.grid().dx());
}

WaveFunction make_gaussian_packet(const Grid &grid, double x0, double sigma_x, double k0) {
    if (!(sigma_x >= 3.0 * grid.dx())) {
        throw std::invalid_argument("make_gaussian_packet: packet too narrow for grid (sigma_x < 3 dx)");
    }
    if (x0 - 5.0 * sigma_x < grid.x_min() || x0 + 5.0 * sigma_x > grid.x_max()) {
        throw std::invalid_argument("make_gaussian_packet: packet touches the domain boundary (5 sigma_x rule)");
    }
    std::vector<Complex> amp(grid.size());
    double inv4s2 = 1.0 / (4.0 * sigma_x * sigma_x);
    for (std::size_t k = 0; k < grid.size(); k++) {
        double x = grid.x(k);
        double d = x - x0;
        amp[k] = std::exp(-d * d * inv4s2) * std::polar(1.0, k0 * x);
    }
    return WaveFunction(grid, std::move(amp)).normalized();
}

double wavenumber_for_mean_energy(double energy, double sigma_x) {
    double spread = 1.0 / (8.0 * sigma_x * sigma_x);
    if (!(sigma_x > 0) || !(energy > spread)) {
        throw std::invalid_argument("wavenumber_for_mean_energy: energy below the packet's spread energy");
    }
    return std::sqrt(2.0 * (energy - spread));
}

}  // namespace weakprobe
