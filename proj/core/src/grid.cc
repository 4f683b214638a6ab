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
#include "weakprobe/grid.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace weakprobe {

Grid::Grid(double x_min, double dx, std::size_t n) : x_min_(x_min), dx_(dx), n_(n) {
    if (!std::isfinite(x_min) || !std::isfinite(dx) || !(dx > 0)) {
        throw std::invalid_argument("Grid: dx must be positive and finite");
    }
    if (n < 2 || !std::has_single_bit(n)) {
        throw std::invalid_argument("Grid: point count must be a power of two >= 2, got " + std::to_string(n));
    }
}

Grid Grid::spanning(double x_min, double x_max, std::size_t n) {
    if (!(x_max > x_min)) {
        throw std::invalid_argument("Grid: x_max must exceed x_min");
    }
    if (n == 0) {
        throw std::invalid_argument("Grid: point count must be a power of two >= 2, got 0");
    }
    return Grid(x_min, (x_max - x_min) / static_cast<double>(n), n);
}

std::vector<double> Grid::points() const {
    std::vector<double> out(n_);
    for (std::size_t k = 0; k < n_; k++) {
        out[k] = x(k);
    }
    return out;
}

double Grid::dk() const {
    return 2.0 * std::numbers::pi / length();
}

double Grid::wavenumber(std::size_t k) const {
    auto signed_k = static_cast<double>(k);
    if (k >= n_ / 2) {
        signed_k -= static_cast<double>(n_);
    }
    return signed_k * dk();
}

}  // namespace weakprobe
