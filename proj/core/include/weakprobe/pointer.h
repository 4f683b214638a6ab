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
#ifndef WEAKPROBE_POINTER_H
#define WEAKPROBE_POINTER_H

#include <complex>
#include <cstddef>
#include <vector>

namespace weakprobe {

/// Uniform sampling axis for a pointer coordinate.
struct PointerAxis {
    double x_min;
    double dx;
    std::size_t n;

    double x(std::size_t k) const {
        return x_min + static_cast<double>(k) * dx;
    }
    /// n points spanning [center - half_width, center + half_width].
    static PointerAxis centered(double center, double half_width, std::size_t n);
};

/// Gaussian pointer wavefunction (2 pi sigma^2)^(-1/4) exp(-(x - c)^2 / (4 sigma^2)).
/// sigma is the standard deviation of |G|^2, so <(x - c)^2> = sigma^2.
class PointerState {
   public:
    PointerState(double center, double sigma);

    static PointerState unshifted(double sigma) {
        return PointerState(0.0, sigma);
    }

    double center() const {
        return center_;
    }
    double sigma() const {
        return sigma_;
    }

    std::complex<double> amplitude(double x) const;
    /// <this|other>, closed form for two real Gaussians.
    double overlap(const PointerState &other) const;

    std::vector<std::complex<double>> sample(const PointerAxis &axis) const;

    /// Axis covering +/- 8 sigma around the center.
    PointerAxis default_axis(std::size_t n = 512) const;

   private:
    double center_;
    double sigma_;
};

/// Translates the pointer; sigma is unchanged.
PointerState shift_pointer(const PointerState &p, double amount);

struct PointerQuadrature {
    double norm;
    double mean;
    double variance;
};

/// Zeroth, first and second moments of |psi|^2 by quadrature on the axis.
PointerQuadrature pointer_moments(const std::vector<std::complex<double>> &amp, const PointerAxis &axis);

/// One term c * G_A(center_a, sigma) G_B(center_b, sigma) of a joint state.
struct GaussianTerm {
    std::complex<double> coeff;
    double center_a;
    double center_b;
};

enum class JointForm {
    kProduct,
    /// Orthogonal particle labels kept, one branch per label.
    kWhichPath,
    /// Coherent superposition left after erasure and post-selection.
    kErased,
    /// Post-selected two-probe state.
    kTwoProbe,
};

const char *joint_form_name(JointForm form);

/// Moment report. Key names match the JSON report format.
struct PointerMoments {
    double mean_a;
    double mean_b;
    double var_a;
    double var_b;
    double var_diff;
    double postselect_prob;
};

/// State of two Gaussian pointers (x_A, x_B) of common width sigma.
///
/// Each branch is a superposition of shifted Gaussian products; branches are
/// tied to mutually orthogonal particle states, so the detector density is
/// the sum of the branch densities. Every branch is also sampled on a 2-D
/// pointer grid (row index over x_A) which is what the quadrature routines
/// use; analytic_moments() is the closed-form counterpart.
class JointPointerState {
   public:
    using Branch = std::vector<GaussianTerm>;

    JointPointerState(JointForm form, double sigma, std::vector<Branch> branches, double postselect_prob = 1.0,
                      std::size_t points = 512);

    JointForm form() const {
        return form_;
    }
    double sigma() const {
        return sigma_;
    }
    const std::vector<Branch> &branches() const {
        return branches_;
    }
    double postselect_prob() const {
        return postselect_prob_;
    }
    const PointerAxis &axis_a() const {
        return axis_a_;
    }
    const PointerAxis &axis_b() const {
        return axis_b_;
    }
    /// Row-major samples of branch j; element (ia, ib) at ia * axis_b().n + ib.
    const std::vector<std::complex<double>> &grid(std::size_t j) const {
        return grids_[j];
    }

    /// Squared norm by 2-D quadrature.
    double norm_squared() const;
    /// Moments by 2-D quadrature. Throws NumericalGuardError when the result
    /// does not agree with a half-resolution quadrature to 1e-8.
    PointerMoments moments() const;
    /// Exact moments from the Gaussian-term expansion.
    PointerMoments analytic_moments() const;

    /// Conditional mean of x_B given x_A (by quadrature on the grid row
    /// nearest to x_a).
    double conditional_mean_b(double x_a) const;

   private:
    double analytic_moments_raw_norm() const;

    JointForm form_;
    double sigma_;
    std::vector<Branch> branches_;
    double postselect_prob_;
    PointerAxis axis_a_;
    PointerAxis axis_b_;
    std::vector<std::vector<std::complex<double>>> grids_;
};

/// G_A(a.center) G_B(b.center); both pointers must share sigma.
JointPointerState product_state(const PointerState &a, const PointerState &b, std::size_t points = 512);

/// [G_A(delta) G_B(0) |a> + G_A(0) G_B(delta) |b>] / sqrt(2).
JointPointerState which_path_state(double delta, double sigma, std::size_t points = 512);

/// Recombines the particle paths and post-selects (|a> + |b>)/sqrt(2):
///   K [G_A(delta) G_B(0) + G_A(0) G_B(delta)],
///   K = [2 (1 + |<G(0)|G(delta)>|^2)]^(-1/2).
/// The success probability (1 + |<G(0)|G(delta)>|^2)/2 is recorded. Throws
/// std::invalid_argument unless the input is a which-path state.
JointPointerState erase_and_postselect(const JointPointerState &state);

/// Normalization constant K of the erased state.
double erased_normalization(double delta, double sigma);

/// Var(x_A - x_B) by 2-D quadrature (see JointPointerState::moments).
double difference_variance(const JointPointerState &state);

/// G_A(delta_a) G_B(delta_b): both pointers moved with certainty.
JointPointerState certain_shift_state(double delta_a, double delta_b, double sigma, std::size_t points = 512);

}  // namespace weakprobe

#endif  // WEAKPROBE_POINTER_H
