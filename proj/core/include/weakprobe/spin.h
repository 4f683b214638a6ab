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
#ifndef WEAKPROBE_SPIN_H
#define WEAKPROBE_SPIN_H

#include <Eigen/Dense>

namespace weakprobe {

using SpinOperator = Eigen::MatrixXcd;
using SpinState = Eigen::VectorXcd;

struct SpinOps {
    SpinOperator x;
    SpinOperator y;
    SpinOperator z;
};

/// Spin-j matrices in the S_z basis ordered m = j, j-1, ..., -j, built from
/// the ladder operators (hbar = 1). Throws std::invalid_argument unless 2j is
/// a positive integer.
SpinOps spin_ops(double j);

/// Normalized eigenvector of a Hermitian operator for the eigenvalue closest
/// to `eigenvalue`. The phase is fixed so the largest component is real and
/// positive.
SpinState spin_eigenstate(const SpinOperator &op, double eigenvalue);

/// Largest absolute entry of op - op^dagger.
double hermiticity_defect(const SpinOperator &op);

}  // namespace weakprobe

#endif  // WEAKPROBE_SPIN_H
