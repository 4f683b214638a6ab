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
#include "weakprobe/spin.h"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace weakprobe {

SpinOps spin_ops(double j) {
    double two_j = 2.0 * j;
    if (!std::isfinite(j) || !(two_j >= 1.0) || std::abs(two_j - std::round(two_j)) > 1e-12) {
        throw std::invalid_argument("spin_ops: 2j must be a positive integer");
    }
    auto dim = static_cast<Eigen::Index>(std::round(two_j)) + 1;
    j = 0.5 * std::round(two_j);

    // Basis index r holds m = j - r. S_+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>.
    SpinOperator raise = SpinOperator::Zero(dim, dim);
    SpinOperator sz = SpinOperator::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        double m = j - static_cast<double>(r);
        sz(r, r) = m;
        if (r > 0) {
            raise(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));
        }
    }
    SpinOperator lower = raise.adjoint();
    SpinOps ops;
    ops.x = 0.5 * (raise + lower);
    ops.y = std::complex<double>(0.0, -0.5) * (raise - lower);
    ops.z = sz;
    return ops;
}

SpinState spin_eigenstate(const SpinOperator &op, double eigenvalue) {
    if (op.rows() != op.cols() || op.rows() == 0) {
        throw std::invalid_argument("spin_eigenstate: operator must be square");
    }
    Eigen::SelfAdjointEigenSolver<SpinOperator> solver(op);
    if (solver.info() != Eigen::Success) {
        throw std::invalid_argument("spin_eigenstate: eigen-decomposition failed");
    }
    Eigen::Index best = 0;
    const auto &values = solver.eigenvalues();
    for (Eigen::Index r = 1; r < values.size(); r++) {
        if (std::abs(values(r) - eigenvalue) < std::abs(values(best) - eigenvalue)) {
            best = r;
        }
    }
    SpinState v = solver.eigenvectors().col(best);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    v *= std::polar(1.0, -std::arg(v(pivot)));
    return v.normalized();
}

double hermiticity_defect(const SpinOperator &op) {
    return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace weakprobe
