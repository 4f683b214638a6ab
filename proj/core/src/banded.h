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
#ifndef WEAKPROBE_SRC_BANDED_H
#define WEAKPROBE_SRC_BANDED_H

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace weakprobe::internal {

/// Solves A x = b for a periodic banded complex matrix A (half bandwidth p,
/// entries wrapping around the corners). The band is factored with LAPACK and
/// the wrap-around entries are handled with a rank-2p Woodbury correction.
class PeriodicBandedSolver {
   public:
    /// row_coeffs(i) must fill 2p+1 entries: A(i, i+j mod n) for j = -p..p.
    template <typename RowFn>
    PeriodicBandedSolver(std::size_t n, std::size_t p, RowFn &&row_coeffs) : n_(n), p_(p) {
        std::vector<std::complex<double>> rows(n * (2 * p + 1));
        for (std::size_t i = 0; i < n; i++) {
            row_coeffs(i, rows.data() + i * (2 * p + 1));
        }
        factor(rows);
    }

    /// In-place solve.
    void solve(std::vector<std::complex<double>> &b) const;

   private:
    void factor(const std::vector<std::complex<double>> &rows);
    void band_solve(std::complex<double> *b, std::size_t nrhs) const;

    std::size_t n_;
    std::size_t p_;
    std::vector<std::complex<double>> band_;  // LAPACK band storage, LU factors
    std::vector<int> pivots_;
    std::vector<std::size_t> corner_rows_;
    std::vector<std::vector<std::pair<std::size_t, std::complex<double>>>> corner_entries_;
    std::vector<std::complex<double>> z_;         // B^-1 U, n x 2p column-major
    std::vector<std::pair<std::size_t, std::size_t>> z_range_;
    std::vector<std::complex<double>> capacitance_;  // (I + W^T Z)^-1, 2p x 2p
};

}  // namespace weakprobe::internal

#endif
