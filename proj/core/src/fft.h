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
#ifndef WEAKPROBE_SRC_FFT_H
#define WEAKPROBE_SRC_FFT_H

#include <complex>
#include <cstddef>
#include <vector>

#include <fftw3.h>

namespace weakprobe::internal {

/// In-place complex FFT pair of fixed length backed by FFTW.
///
/// Plans are built with FFTW_ESTIMATE so the chosen algorithm, and hence the
/// rounding, is identical from run to run. Plan creation is serialized
/// because the FFTW planner is not thread-safe.
class Fft {
   public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(const Fft &) = delete;
    Fft &operator=(const Fft &) = delete;

    std::size_t size() const {
        return n_;
    }
    /// Unnormalized forward transform (exponent -i).
    void forward(std::vector<std::complex<double>> &data);
    /// Unnormalized inverse transform; divide by n to invert forward().
    void backward(std::vector<std::complex<double>> &data);

   private:
    std::size_t n_;
    fftw_complex *buffer_;
    fftw_plan forward_plan_;
    fftw_plan backward_plan_;
};

}  // namespace weakprobe::internal

#endif  // WEAKPROBE_SRC_FFT_H
