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
#include "weakprobe/region.h"

#include <cmath>
#include <stdexcept>

namespace weakprobe {

RegionProjector::RegionProjector(const Grid &grid, double a, double b) : grid_(grid), a_(a), b_(b) {
    if (!(a < b)) {
        throw std::invalid_argument("RegionProjector: empty region (a >= b)");
    }
    // x(k) is monotone, so the mask is a contiguous index range.
    std::size_t n = grid.size();
    first_ = 0;
    while (first_ < n && grid.x(first_) < a) {
        first_++;
    }
    last_ = first_;
    while (last_ < n && grid.x(last_) < b) {
        last_++;
    }
}

RegionProjector RegionProjector::whole(const Grid &grid) {
    return RegionProjector(grid, -INFINITY, INFINITY);
}

WaveFunction RegionProjector::apply(const WaveFunction &psi) const {
    if (!(psi.grid() == grid_)) {
        throw std::invalid_argument("RegionProjector::apply: grids differ");
    }
    std::vector<Complex> out(psi.size(), Complex(0.0, 0.0));
    for (std::size_t k = first_; k < last_; k++) {
        out[k] = psi[k];
    }
    return WaveFunction(grid_, std::move(out));
}

Complex RegionProjector::matrix_element(const WaveFunction &phi, const WaveFunction &psi) const {
    if (!(psi.grid() == grid_) || !(phi.grid() == grid_)) {
        throw std::invalid_argument("RegionProjector::matrix_element: grids differ");
    }
    Complex total = 0.0;
    for (std::size_t k = first_; k < last_; k++) {
        total += std::conj(phi[k]) * psi[k];
    }
    return total * grid_.dx();
}

double RegionProjector::expectation(const WaveFunction &psi) const {
    return matrix_element(psi, psi).real();
}

}  // namespace weakprobe
