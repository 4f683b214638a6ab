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
#ifndef WEAKPROBE_REGION_H
#define WEAKPROBE_REGION_H

#include <cstddef>
#include <vector>

#include "weakprobe/wavefunction.h"

namespace weakprobe {

/// Projector onto the grid points with a <= x(k) < b.
///
/// The mask is half-open so that adjacent regions tile the grid exactly.
class RegionProjector {
   public:
    RegionProjector(const Grid &grid, double a, double b);

    /// Projector onto every point of the grid.
    static RegionProjector whole(const Grid &grid);

    double a() const {
        return a_;
    }
    double b() const {
        return b_;
    }
    const Grid &grid() const {
        return grid_;
    }
    /// First grid index inside the region.
    std::size_t first() const {
        return first_;
    }
    /// One past the last grid index inside the region.
    std::size_t last() const {
        return last_;
    }
    bool contains(std::size_t k) const {
        return k >= first_ && k < last_;
    }
    std::size_t count() const {
        return last_ - first_;
    }

    WaveFunction apply(const WaveFunction &psi) const;
    /// <phi|P|psi>.
    Complex matrix_element(const WaveFunction &phi, const WaveFunction &psi) const;
    /// <psi|P|psi>.
    double expectation(const WaveFunction &psi) const;

   private:
    Grid grid_;
    double a_;
    double b_;
    std::size_t first_;
    std::size_t last_;
};

}  // namespace weakprobe

#endif  // WEAKPROBE_REGION_H
