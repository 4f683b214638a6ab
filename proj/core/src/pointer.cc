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
#include "weakprobe/pointer.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "weakprobe/errors.h"

namespace weakprobe {

namespace {

constexpr double kAxisHalfWidthSigmas = 8.0;

void require_sigma(double sigma, const char *where) {
    if (!std::isfinite(sigma) || !(sigma > 0)) {
        throw std::invalid_argument(std::string(where) + ": sigma must be positive");
    }
}

// <G(u)|G(v)> for real Gaussians of common width.
double gaussian_overlap(double u, double v, double sigma) {
    double d = u - v;
    return std::exp(-d * d / (8.0 * sigma * sigma));
}

PointerAxis axis_around(double lo, double hi, double sigma, std::size_t n) {
    double a = lo - kAxisHalfWidthSigmas * sigma;
    double b = hi + kAxisHalfWidthSigmas * sigma;
    return PointerAxis{a, (b - a) / static_cast<double>(n - 1), n};
}

struct RawMoments {
    double norm = 0;
    double a = 0;
    double b = 0;
    double aa = 0;
    double bb = 0;
    double ab = 0;

    PointerMoments finish(double postselect_prob) const {
        double ma = a / norm;
        double mb = b / norm;
        double va = aa / norm - ma * ma;
        double vb = bb / norm - mb * mb;
        double cov = ab / norm - ma * mb;
        return PointerMoments{ma, mb, va, vb, va + vb - 2.0 * cov, postselect_prob};
    }
};

}  // namespace

PointerAxis PointerAxis::centered(double center, double half_width, std::size_t n) {
    if (n < 2 || !(half_width > 0)) {
        throw std::invalid_argument("PointerAxis::centered: need n >= 2 and a positive half width");
    }
    return PointerAxis{center - half_width, 2.0 * half_width / static_cast<double>(n - 1), n};
}

PointerState::PointerState(double center, double sigma) : center_(center), sigma_(sigma) {
    require_sigma(sigma, "PointerState");
    if (!std::isfinite(center)) {
        throw std::invalid_argument("PointerState: center must be finite");
    }
}

std::complex<double> PointerState::amplitude(double x) const {
    double z = (x - center_) / sigma_;
    return std::pow(2.0 * std::numbers::pi * sigma_ * sigma_, -0.25) * std::exp(-0.25 * z * z);
}

double PointerState::overlap(const PointerState &other) const {
    double s1 = sigma_ * sigma_;
    double s2 = other.sigma_ * other.sigma_;
    double d = center_ - other.center_;
    return std::sqrt(2.0 * sigma_ * other.sigma_ / (s1 + s2)) * std::exp(-d * d / (4.0 * (s1 + s2)));
}

std::vector<std::complex<double>> PointerState::sample(const PointerAxis &axis) const {
    std::vector<std::complex<double>> out(axis.n);
    for (std::size_t k = 0; k < axis.n; k++) {
        out[k] = amplitude(axis.x(k));
    }
    return out;
}

PointerAxis PointerState::default_axis(std::size_t n) const {
    return PointerAxis::centered(center_, kAxisHalfWidthSigmas * sigma_, n);
}

PointerState shift_pointer(const PointerState &p, double amount) {
    return PointerState(p.center() + amount, p.sigma());
}

PointerQuadrature pointer_moments(const std::vector<std::complex<double>> &amp, const PointerAxis &axis) {
    if (amp.size() != axis.n) {
        throw std::invalid_argument("pointer_moments: sample count does not match the axis");
    }
    double s0 = 0;
    double s1 = 0;
    double s2 = 0;
    for (std::size_t k = 0; k < axis.n; k++) {
        double w = std::norm(amp[k]);
        double x = axis.x(k);
        s0 += w;
        s1 += w * x;
        s2 += w * x * x;
    }
    double mean = s1 / s0;
    return PointerQuadrature{s0 * axis.dx, mean, s2 / s0 - mean * mean};
}

const char *joint_form_name(JointForm form) {
    switch (form) {
        case JointForm::kProduct:
            return "product";
        case JointForm::kWhichPath:
            return "which-path";
        case JointForm::kErased:
            return "erased";
        case JointForm::kTwoProbe:
            return "two-probe";
    }
    return "unknown";
}

JointPointerState::JointPointerState(JointForm form, double sigma, std::vector<Branch> branches,
                                     double postselect_prob, std::size_t points)
    : form_(form), sigma_(sigma), branches_(std::move(branches)), postselect_prob_(postselect_prob) {
    require_sigma(sigma, "JointPointerState");
    if (points < 16) {
        throw std::invalid_argument("JointPointerState: pointer grid needs at least 16 points per axis");
    }
    if (!(postselect_prob > 0) || postselect_prob > 1.0 + 1e-12) {
        throw std::invalid_argument("JointPointerState: post-selection probability must be in (0, 1]");
    }
    double lo_a = INFINITY, hi_a = -INFINITY, lo_b = INFINITY, hi_b = -INFINITY;
    bool any = false;
    for (const auto &branch : branches_) {
        for (const auto &t : branch) {
            if (!std::isfinite(t.center_a) || !std::isfinite(t.center_b) || !std::isfinite(std::abs(t.coeff))) {
                throw std::invalid_argument("JointPointerState: non-finite term");
            }
            lo_a = std::min(lo_a, t.center_a);
            hi_a = std::max(hi_a, t.center_a);
            lo_b = std::min(lo_b, t.center_b);
            hi_b = std::max(hi_b, t.center_b);
            any = true;
        }
    }
    if (!any) {
        throw std::invalid_argument("JointPointerState: state has no terms");
    }
    axis_a_ = axis_around(lo_a, hi_a, sigma, points);
    axis_b_ = axis_around(lo_b, hi_b, sigma, points);

    std::size_t na = axis_a_.n;
    std::size_t nb = axis_b_.n;
    grids_.reserve(branches_.size());
    for (const auto &branch : branches_) {
        std::vector<std::complex<double>> g(na * nb, 0.0);
        for (const auto &t : branch) {
            auto ga = PointerState(t.center_a, sigma).sample(axis_a_);
            auto gb = PointerState(t.center_b, sigma).sample(axis_b_);
            for (std::size_t ia = 0; ia < na; ia++) {
                std::complex<double> row = t.coeff * ga[ia];
                std::complex<double> *dst = g.data() + ia * nb;
                for (std::size_t ib = 0; ib < nb; ib++) {
                    dst[ib] += row * gb[ib];
                }
            }
        }
        grids_.push_back(std::move(g));
    }
    if (!(analytic_moments_raw_norm() > 0)) {
        throw std::invalid_argument("JointPointerState: state has zero norm");
    }
}

double JointPointerState::analytic_moments_raw_norm() const {
    double total = 0.0;
    for (const auto &branch : branches_) {
        for (const auto &m : branch) {
            for (const auto &n : branch) {
                total += (std::conj(m.coeff) * n.coeff).real() * gaussian_overlap(m.center_a, n.center_a, sigma_) *
                         gaussian_overlap(m.center_b, n.center_b, sigma_);
            }
        }
    }
    return total;
}

namespace {

RawMoments quadrature(const std::vector<std::vector<std::complex<double>>> &grids, const PointerAxis &axis_a,
                      const PointerAxis &axis_b, std::size_t stride) {
    RawMoments r;
    std::size_t nb = axis_b.n;
    for (const auto &g : grids) {
        for (std::size_t ia = 0; ia < axis_a.n; ia += stride) {
            double xa = axis_a.x(ia);
            double row0 = 0, row1 = 0, row2 = 0;
            const std::complex<double> *src = g.data() + ia * nb;
            for (std::size_t ib = 0; ib < nb; ib += stride) {
                double w = std::norm(src[ib]);
                double xb = axis_b.x(ib);
                row0 += w;
                row1 += w * xb;
                row2 += w * xb * xb;
            }
            r.norm += row0;
            r.a += xa * row0;
            r.aa += xa * xa * row0;
            r.b += row1;
            r.ab += xa * row1;
            r.bb += row2;
        }
    }
    double cell = axis_a.dx * axis_b.dx * static_cast<double>(stride * stride);
    r.norm *= cell;
    r.a *= cell;
    r.b *= cell;
    r.aa *= cell;
    r.bb *= cell;
    r.ab *= cell;
    return r;
}

}  // namespace

double JointPointerState::norm_squared() const {
    return quadrature(grids_, axis_a_, axis_b_, 1).norm;
}

PointerMoments JointPointerState::moments() const {
    PointerMoments fine = quadrature(grids_, axis_a_, axis_b_, 1).finish(postselect_prob_);
    PointerMoments coarse = quadrature(grids_, axis_a_, axis_b_, 2).finish(postselect_prob_);
    double scale = sigma_ * sigma_;
    double loc = sigma_ + std::max({std::abs(fine.mean_a), std::abs(fine.mean_b)});
    bool ok = std::abs(fine.mean_a - coarse.mean_a) <= 1e-8 * loc &&
              std::abs(fine.mean_b - coarse.mean_b) <= 1e-8 * loc &&
              std::abs(fine.var_a - coarse.var_a) <= 1e-8 * scale &&
              std::abs(fine.var_b - coarse.var_b) <= 1e-8 * scale &&
              std::abs(fine.var_diff - coarse.var_diff) <= 1e-8 * scale;
    if (!ok) {
        throw NumericalGuardError("JointPointerState::moments: pointer quadrature not converged");
    }
    return fine;
}

PointerMoments JointPointerState::analytic_moments() const {
    RawMoments r;
    double s2 = sigma_ * sigma_;
    for (const auto &branch : branches_) {
        for (const auto &m : branch) {
            for (const auto &n : branch) {
                double w = (std::conj(m.coeff) * n.coeff).real() * gaussian_overlap(m.center_a, n.center_a, sigma_) *
                           gaussian_overlap(m.center_b, n.center_b, sigma_);
                double ma = 0.5 * (m.center_a + n.center_a);
                double mb = 0.5 * (m.center_b + n.center_b);
                r.norm += w;
                r.a += w * ma;
                r.b += w * mb;
                r.aa += w * (ma * ma + s2);
                r.bb += w * (mb * mb + s2);
                r.ab += w * ma * mb;
            }
        }
    }
    return r.finish(postselect_prob_);
}

double JointPointerState::conditional_mean_b(double x_a) const {
    double pos = (x_a - axis_a_.x_min) / axis_a_.dx;
    if (!(pos > -0.5) || pos > static_cast<double>(axis_a_.n) - 0.5) {
        throw std::invalid_argument("conditional_mean_b: x_a lies outside the pointer grid");
    }
    auto ia = static_cast<std::size_t>(std::lround(pos));
    std::size_t nb = axis_b_.n;
    double s0 = 0, s1 = 0;
    for (const auto &g : grids_) {
        for (std::size_t ib = 0; ib < nb; ib++) {
            double w = std::norm(g[ia * nb + ib]);
            s0 += w;
            s1 += w * axis_b_.x(ib);
        }
    }
    if (!(s0 > 0)) {
        throw NumericalGuardError("conditional_mean_b: no density on this row");
    }
    return s1 / s0;
}

JointPointerState product_state(const PointerState &a, const PointerState &b, std::size_t points) {
    if (a.sigma() != b.sigma()) {
        throw std::invalid_argument("product_state: pointers must share sigma");
    }
    return JointPointerState(JointForm::kProduct, a.sigma(), {{GaussianTerm{1.0, a.center(), b.center()}}}, 1.0,
                             points);
}

JointPointerState which_path_state(double delta, double sigma, std::size_t points) {
    require_sigma(sigma, "which_path_state");
    double h = std::sqrt(0.5);
    return JointPointerState(JointForm::kWhichPath, sigma,
                             {{GaussianTerm{h, delta, 0.0}}, {GaussianTerm{h, 0.0, delta}}}, 1.0, points);
}

double erased_normalization(double delta, double sigma) {
    require_sigma(sigma, "erased_normalization");
    double c = gaussian_overlap(delta, 0.0, sigma);
    return 1.0 / std::sqrt(2.0 * (1.0 + c * c));
}

JointPointerState erase_and_postselect(const JointPointerState &state) {
    if (state.form() != JointForm::kWhichPath || state.branches().size() != 2 ||
        state.branches()[0].size() != 1 || state.branches()[1].size() != 1) {
        throw std::invalid_argument("erase_and_postselect: expects a which-path state");
    }
    const GaussianTerm &first = state.branches()[0][0];
    const GaussianTerm &second = state.branches()[1][0];
    // Projecting onto (|a> + |b>)/sqrt(2) keeps each branch with weight 1/sqrt(2).
    std::complex<double> ca = first.coeff * std::sqrt(0.5);
    std::complex<double> cb = second.coeff * std::sqrt(0.5);
    double sigma = state.sigma();
    double norm2 = std::norm(ca) + std::norm(cb) +
                   2.0 * (std::conj(ca) * cb).real() * gaussian_overlap(first.center_a, second.center_a, sigma) *
                       gaussian_overlap(first.center_b, second.center_b, sigma);
    double k = 1.0 / std::sqrt(norm2);
    return JointPointerState(JointForm::kErased, sigma,
                             {{GaussianTerm{ca * k, first.center_a, first.center_b},
                               GaussianTerm{cb * k, second.center_a, second.center_b}}},
                             norm2 * state.postselect_prob(), state.axis_a().n);
}

double difference_variance(const JointPointerState &state) {
    return state.moments().var_diff;
}

JointPointerState certain_shift_state(double delta_a, double delta_b, double sigma, std::size_t points) {
    require_sigma(sigma, "certain_shift_state");
    return JointPointerState(JointForm::kProduct, sigma, {{GaussianTerm{1.0, delta_a, delta_b}}}, 1.0, points);
}

}  // namespace weakprobe
