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
#include "weakprobe/barrier.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace weakprobe {

BarrierSpec::BarrierSpec(std::vector<BarrierSegment> segments) : segments_(std::move(segments)) {
    for (const auto &s : segments_) {
        if (!std::isfinite(s.x_left) || !std::isfinite(s.x_right) || !(s.x_left < s.x_right)) {
            throw std::invalid_argument("BarrierSpec: each segment needs finite edges with x_left < x_right");
        }
        if (!std::isfinite(s.height)) {
            throw std::invalid_argument("BarrierSpec: segment heights must be finite");
        }
    }
    std::sort(segments_.begin(), segments_.end(), [](const BarrierSegment &a, const BarrierSegment &b) {
        return a.x_left < b.x_left;
    });
    for (std::size_t j = 1; j < segments_.size(); j++) {
        if (segments_[j].x_left < segments_[j - 1].x_right) {
            throw std::invalid_argument("BarrierSpec: segments overlap");
        }
    }
}

BarrierSpec BarrierSpec::rectangular(double x_left, double x_right, double height) {
    return BarrierSpec({BarrierSegment{x_left, x_right, height}});
}

double BarrierSpec::left_edge() const {
    return segments_.empty() ? 0.0 : segments_.front().x_left;
}

double BarrierSpec::right_edge() const {
    return segments_.empty() ? 0.0 : segments_.back().x_right;
}

double BarrierSpec::span() const {
    return right_edge() - left_edge();
}

double BarrierSpec::max_height() const {
    double h = 0.0;
    for (const auto &s : segments_) {
        h = std::max(h, s.height);
    }
    return h;
}

double BarrierSpec::potential(double x) const {
    for (const auto &s : segments_) {
        if (x >= s.x_left && x < s.x_right) {
            return s.height;
        }
    }
    return 0.0;
}

std::vector<double> BarrierSpec::sample(const Grid &grid) const {
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < grid.size(); k++) {
        v[k] = potential(grid.x(k));
    }
    return v;
}

BarrierSpec BarrierSpec::mirrored() const {
    std::vector<BarrierSegment> out;
    out.reserve(segments_.size());
    for (const auto &s : segments_) {
        out.push_back({-s.x_right, -s.x_left, s.height});
    }
    return BarrierSpec(std::move(out));
}

}  // namespace weakprobe
