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
#include "fft.h"

#include <cstring>
#include <mutex>
#include <new>

namespace weakprobe::internal {

namespace {

std::mutex &planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
    buffer_ = fftw_alloc_complex(n);
    if (buffer_ == nullptr) {
        throw std::bad_alloc();
    }
    std::lock_guard<std::mutex> lock(planner_mutex());
    int len = static_cast<int>(n);
    forward_plan_ = fftw_plan_dft_1d(len, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_plan_ = fftw_plan_dft_1d(len, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward_plan_);
    fftw_destroy_plan(backward_plan_);
    fftw_free(buffer_);
}

// std::complex<double> is layout-compatible with fftw_complex, so the data is
// copied through the aligned plan buffer rather than re-planned per array.
void Fft::forward(std::vector<std::complex<double>> &data) {
    std::memcpy(buffer_, data.data(), n_ * sizeof(fftw_complex));
    fftw_execute(forward_plan_);
    std::memcpy(static_cast<void *>(data.data()), buffer_, n_ * sizeof(fftw_complex));
}

void Fft::backward(std::vector<std::complex<double>> &data) {
    std::memcpy(buffer_, data.data(), n_ * sizeof(fftw_complex));
    fftw_execute(backward_plan_);
    std::memcpy(static_cast<void *>(data.data()), buffer_, n_ * sizeof(fftw_complex));
}

}  // namespace weakprobe::internal
