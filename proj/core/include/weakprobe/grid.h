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
#ifndef WEAKPROBE_GRID_H
#define WEAKPROBE_GRID_H

#include <cstddef>
#include <vector>

namespace weakprobe {

/// Uniform periodic 1D grid: x(k) = x_min + k*dx for k in [0, n).
///
/// The number of points must be a power of two so the spectral propagator can
/// use radix-2 transforms. The point x_min + n*dx is identified with x_min.
class Grid {
   public:
    Grid(double x_min, double dx, std::size_t n);

    /// Grid covering [x_min, x_max) with n points.
    static Grid spanning(double x_min, double x_max, std::size_t n);

    double x_min() const {
        return x_min_;
    }
    double dx() const {
        return dx_;
    }
    std::size_t size() const {
        return n_;
    }
    double length() const {
        return dx_ * static_cast<double>(n_);
    }
    /// One past the last grid point.
    double x_max() const {
        return x_min_ + length();
    }
    double x(std::size_t k) const {
        return x_min_ + static_cast<double>(k) * dx_;
    }
    std::vector<double> points() const;

    /// Spacing of the discrete Fourier grid, 2*pi/(n*dx).
    double dk() const;
    /// Wavenumber of FFT bin k in standard FFT ordering (non-negative first).
    double wavenumber(std::size_t k) const;

    bool operator==(const Grid &other) const = default;

   private:
    double x_min_;
    double dx_;
    std::size_t n_;
};

}  // namespace weakprobe

#endif  // WEAKPROBE_GRID_H
