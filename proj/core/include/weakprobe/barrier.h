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
#ifndef WEAKPROBE_BARRIER_H
#define WEAKPROBE_BARRIER_H

#include <span>
#include <vector>

#include "weakprobe/grid.h"

namespace weakprobe {

struct BarrierSegment {
    double x_left;
    double x_right;
    double height;

    double width() const {
        return x_right - x_left;
    }
    bool operator==(const BarrierSegment &other) const = default;
};

/// Piecewise-constant potential made of non-overlapping segments; zero
/// outside the segments. Segments are stored sorted by x_left.
class BarrierSpec {
   public:
    BarrierSpec() = default;
    explicit BarrierSpec(std::vector<BarrierSegment> segments);

    static BarrierSpec rectangular(double x_left, double x_right, double height);
    static BarrierSpec none() {
        return BarrierSpec();
    }

    std::span<const BarrierSegment> segments() const {
        return segments_;
    }
    bool empty() const {
        return segments_.empty();
    }

    /// Leftmost and rightmost segment edges. Both are 0 for an empty barrier.
    double left_edge() const;
    double right_edge() const;
    /// right_edge() - left_edge().
    double span() const;
    double center() const {
        return 0.5 * (left_edge() + right_edge());
    }
    double max_height() const;

    /// V(x); segments are half-open [x_left, x_right) like region projectors.
    double potential(double x) const;
    std::vector<double> sample(const Grid &grid) const;

    /// Mirror image x -> -x.
    BarrierSpec mirrored() const;

    bool operator==(const BarrierSpec &other) const = default;

   private:
    std::vector<BarrierSegment> segments_;
};

}  // namespace weakprobe

#endif  // WEAKPROBE_BARRIER_H
