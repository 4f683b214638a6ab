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
#include "weakprobe/scatter.h"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "weakprobe/errors.h"

namespace weakprobe {

namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;
using cd = std::complex<double>;

Mat2 multiply(const Mat2 &a, const Mat2 &b) {
    Mat2 out{};
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return out;
}

// Maps (psi, psi') at the left end of a constant region of width w to the
// right end. q2 = 2 (E - V) is never zero here.
Mat2 region_matrix(double q2, double w) {
    if (q2 > 0) {
        double q = std::sqrt(q2);
        double c = std::cos(q * w);
        double s = std::sin(q * w);
        return {{{c, s / q}, {-q * s, c}}};
    }
    double kappa = std::sqrt(-q2);
    double c = std::cosh(kappa * w);
    double s = std::sinh(kappa * w);
    return {{{c, s / kappa}, {kappa * s, c}}};
}

void check_energy(double energy, const BarrierSpec &barrier) {
    if (!std::isfinite(energy) || !(energy > 0)) {
        throw std::invalid_argument("transfer_matrix_amplitudes: energy must be positive");
    }
    for (const auto &s : barrier.segments()) {
        if (energy == s.height) {
            throw std::invalid_argument(
                "transfer_matrix_amplitudes: energy equals a segment height (zero local wavenumber)");
        }
    }
}

ScatterResult from_left(double energy, const BarrierSpec &barrier) {
    double k = std::sqrt(2.0 * energy);
    double left = barrier.left_edge();
    double right = barrier.right_edge();

    Mat2 m{{{1.0, 0.0}, {0.0, 1.0}}};
    double x = left;
    for (const auto &s : barrier.segments()) {
        if (s.x_left > x) {
            m = multiply(region_matrix(2.0 * energy, s.x_left - x), m);
        }
        m = multiply(region_matrix(2.0 * (energy - s.height), s.width()), m);
        x = s.x_right;
    }
    for (const auto &row : m) {
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw NumericalGuardError("transfer_matrix_amplitudes: transfer matrix overflow (barrier too opaque)");
            }
        }
    }

    // Left:  psi = e^{ikx} + r e^{-ikx}.  Right: psi = t e^{ikx}.
    // With w = M (1, ik) e^{ikL} and u = M (1, -ik) e^{-ikL}, matching at the
    // right edge gives r = (ik w0 - w1)/(u1 - ik u0) and
    // t = -2ik / (e^{ikR} (u1 - ik u0)), using det M = 1.
    cd ik(0.0, k);
    cd ea = std::polar(1.0, k * left);
    cd eb = std::polar(1.0, -k * left);
    cd w0 = (m[0][0] + m[0][1] * ik) * ea;
    cd w1 = (m[1][0] + m[1][1] * ik) * ea;
    cd u0 = (m[0][0] - m[0][1] * ik) * eb;
    cd u1 = (m[1][0] - m[1][1] * ik) * eb;
    cd denom = u1 - ik * u0;
    ScatterResult out{};
    out.r = (ik * w0 - w1) / denom;
    out.t = -2.0 * ik / (std::polar(1.0, k * right) * denom);
    out.energy = energy;
    out.k = k;
    double vmax = barrier.max_height();
    out.kappa = energy < vmax ? std::sqrt(2.0 * (vmax - energy)) : 0.0;
    out.span = barrier.span();
    return out;
}

}  // namespace

double ScatterResult::traversal_phase() const {
    return std::arg(t) + k * span;
}

ScatterResult transfer_matrix_amplitudes(double energy, const BarrierSpec &barrier, Incidence incidence) {
    check_energy(energy, barrier);
    if (incidence == Incidence::kFromLeft) {
        return from_left(energy, barrier);
    }
    // Right incidence is left incidence on the mirror image; r picks up the
    // reflected coordinate convention of the mirror problem.
    return from_left(energy, barrier.mirrored());
}

GroupDelay group_delay(double energy, const BarrierSpec &barrier, double rel_tol) {
    check_energy(energy, barrier);
    double span = barrier.span();
    double room = energy;
    for (const auto &s : barrier.segments()) {
        room = std::min(room, std::abs(energy - s.height));
    }
    double h = 1e-3 * std::min(room, 1.0);

    auto central = [&](double step) {
        ScatterResult hi = from_left(energy + step, barrier);
        ScatterResult lo = from_left(energy - step, barrier);
        double dphase = std::arg(hi.t / lo.t) + (hi.k - lo.k) * span;
        return dphase / (2.0 * step);
    };

    double coarse = central(h);
    double fine = central(0.5 * h);
    for (int attempt = 0; attempt < 12; attempt++) {
        double scale = std::max(std::abs(fine), 1e-12);
        if (std::abs(coarse - fine) <= rel_tol * scale) {
            return GroupDelay{(4.0 * fine - coarse) / 3.0, coarse, fine, h};
        }
        h *= 0.5;
        coarse = fine;
        fine = central(0.5 * h);
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "group_delay: finite-difference stencil did not converge at E=" << energy << " (estimates " << coarse
        << " and " << fine << ")";
    throw NumericalGuardError(msg.str());
}

}  // namespace weakprobe
