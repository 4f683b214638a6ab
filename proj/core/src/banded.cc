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
#include "banded.h"

#include <lapacke.h>

#include <algorithm>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "weakprobe/errors.h"

namespace weakprobe::internal {

void PeriodicBandedSolver::factor(const std::vector<std::complex<double>> &rows) {
    if (2 * p_ + 1 > n_) {
        throw std::invalid_argument("PeriodicBandedSolver: grid too small for the stencil");
    }
    auto n = static_cast<std::ptrdiff_t>(n_);
    auto p = static_cast<std::ptrdiff_t>(p_);
    std::size_t ldab = 3 * p_ + 1;
    band_.assign(ldab * n_, {0.0, 0.0});
    pivots_.assign(n_, 0);

    for (std::ptrdiff_t i = 0; i < n; i++) {
        bool corner_row = i < p || i >= n - p;
        std::vector<std::pair<std::size_t, std::complex<double>>> wrapped;
        for (std::ptrdiff_t j = -p; j <= p; j++) {
            std::complex<double> a = rows[static_cast<std::size_t>(i * (2 * p + 1) + j + p)];
            std::ptrdiff_t col = i + j;
            if (col < 0 || col >= n) {
                wrapped.emplace_back(static_cast<std::size_t>((col + n) % n), a);
                continue;
            }
            band_[static_cast<std::size_t>(2 * p + i - col) + static_cast<std::size_t>(col) * ldab] = a;
        }
        if (corner_row) {
            corner_rows_.push_back(static_cast<std::size_t>(i));
            corner_entries_.push_back(std::move(wrapped));
        }
    }

    int info = LAPACKE_zgbtrf_work(LAPACK_COL_MAJOR, static_cast<int>(n_), static_cast<int>(n_), static_cast<int>(p_),
                              static_cast<int>(p_), reinterpret_cast<lapack_complex_double *>(band_.data()),
                              static_cast<int>(ldab), pivots_.data());
    if (info != 0) {
        throw NumericalGuardError("PeriodicBandedSolver: band factorization failed");
    }

    std::size_t m = corner_rows_.size();
    z_.assign(n_ * m, {0.0, 0.0});
    for (std::size_t c = 0; c < m; c++) {
        z_[c * n_ + corner_rows_[c]] = 1.0;
    }
    band_solve(z_.data(), m);
    // The correction columns decay geometrically away from the corners; keep
    // only the part above the double floor so the update never touches
    // subnormals.
    z_range_.assign(m, {0, 0});
    for (std::size_t c = 0; c < m; c++) {
        std::complex<double> *col = z_.data() + c * n_;
        double peak = 0.0;
        for (std::size_t i = 0; i < n_; i++) {
            peak = std::max(peak, std::abs(col[i]));
        }
        std::size_t lo = n_;
        std::size_t hi = 0;
        for (std::size_t i = 0; i < n_; i++) {
            if (std::abs(col[i]) <= 1e-30 * peak) {
                col[i] = 0.0;
            } else {
                lo = std::min(lo, i);
                hi = i + 1;
            }
        }
        z_range_[c] = {lo, std::max(lo, hi)};
    }

    Eigen::MatrixXcd cap = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t r = 0; r < m; r++) {
        for (std::size_t c = 0; c < m; c++) {
            std::complex<double> acc = 0.0;
            for (const auto &[col, a] : corner_entries_[r]) {
                acc += a * z_[c * n_ + col];
            }
            cap(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += acc;
        }
    }
    Eigen::MatrixXcd inv = cap.fullPivLu().inverse();
    capacitance_.resize(m * m);
    for (std::size_t r = 0; r < m; r++) {
        for (std::size_t c = 0; c < m; c++) {
            capacitance_[r * m + c] = inv(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
}

// Forward and back substitution over the zgbtrf factors, written out so that
// a single right-hand side avoids per-column BLAS calls.
void PeriodicBandedSolver::band_solve(std::complex<double> *b, std::size_t nrhs) const {
    std::size_t kd = 2 * p_;
    std::size_t ldab = 3 * p_ + 1;
    const std::complex<double> *ab = band_.data();
    for (std::size_t r = 0; r < nrhs; r++) {
        std::complex<double> *x = b + r * n_;
        for (std::size_t j = 0; j + 1 < n_; j++) {
            auto l = static_cast<std::size_t>(pivots_[j] - 1);
            if (l != j) {
                std::swap(x[l], x[j]);
            }
            std::size_t lm = std::min(p_, n_ - j - 1);
            const std::complex<double> *col = ab + j * ldab + kd + 1;
            std::complex<double> xj = x[j];
            for (std::size_t i = 0; i < lm; i++) {
                x[j + 1 + i] -= col[i] * xj;
            }
        }
        for (std::size_t j = n_; j-- > 0;) {
            const std::complex<double> *col = ab + j * ldab;
            std::complex<double> xj = x[j] / col[kd];
            x[j] = xj;
            std::size_t top = j >= kd ? j - kd : 0;
            for (std::size_t i = top; i < j; i++) {
                x[i] -= col[kd + i - j] * xj;
            }
        }
    }
}

void PeriodicBandedSolver::solve(std::vector<std::complex<double>> &b) const {
    if (b.size() != n_) {
        throw std::invalid_argument("PeriodicBandedSolver: size mismatch");
    }
    band_solve(b.data(), 1);
    std::size_t m = corner_rows_.size();
    std::complex<double> wy[64];
    std::complex<double> coef[64];
    for (std::size_t r = 0; r < m; r++) {
        std::complex<double> acc = 0.0;
        for (const auto &[col, a] : corner_entries_[r]) {
            acc += a * b[col];
        }
        wy[r] = acc;
    }
    for (std::size_t r = 0; r < m; r++) {
        std::complex<double> acc = 0.0;
        for (std::size_t c = 0; c < m; c++) {
            acc += capacitance_[r * m + c] * wy[c];
        }
        coef[r] = acc;
    }
    for (std::size_t c = 0; c < m; c++) {
        const std::complex<double> *col = z_.data() + c * n_;
        std::complex<double> w = coef[c];
        for (std::size_t i = z_range_[c].first; i < z_range_[c].second; i++) {
            b[i] -= col[i] * w;
        }
    }
}

}  // namespace weakprobe::internal
