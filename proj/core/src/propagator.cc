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
#include "weakprobe/propagator.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "banded.h"
#include "fft.h"
#include "weakprobe/errors.h"

namespace weakprobe {

namespace {

// Steps between guard checks when no snapshot is due.
constexpr std::size_t kGuardInterval = 64;


}  // namespace

const char *scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::kSplitStep:
            return "split-step";
        case Scheme::kImplicitFd:
            return "implicit-fd";
    }
    return "unknown";
}

Scheme parse_scheme(const char *name) {
    std::string s(name);
    if (s == "split-step") {
        return Scheme::kSplitStep;
    }
    if (s == "implicit-fd") {
        return Scheme::kImplicitFd;
    }
    throw std::invalid_argument("unknown propagation scheme '" + s + "' (expected split-step or implicit-fd)");
}

std::size_t PropagatorConfig::resolved_edge_margin(std::size_t n) const {
    return edge_margin == 0 ? std::max<std::size_t>(1, n / 32) : edge_margin;
}

std::vector<std::size_t> PropagatorConfig::record_steps() const {
    if (!std::isfinite(dt) || !(dt > 0)) {
        throw std::invalid_argument("PropagatorConfig: dt must be positive");
    }
    std::vector<std::size_t> steps;
    steps.reserve(record_times.size());
    for (double t : record_times) {
        double s = t / dt;
        double rounded = std::round(s);
        if (!std::isfinite(s) || rounded < 0 || std::abs(s - rounded) > 1e-6 * std::max(1.0, rounded)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "PropagatorConfig: record time " << t << " is not a non-negative multiple of dt=" << dt;
            throw std::invalid_argument(msg.str());
        }
        auto step = static_cast<std::size_t>(rounded);
        if (step > n_steps) {
            throw std::invalid_argument("PropagatorConfig: record time beyond the end of the run");
        }
        steps.push_back(step);
    }
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    return steps;
}

std::vector<double> second_derivative_stencil(int order) {
    if (order < 2 || order > 16 || order % 2 != 0) {
        throw std::invalid_argument("second_derivative_stencil: order must be even and in [2, 16]");
    }
    int p = order / 2;
    std::vector<double> c(p + 1, 0.0);
    // c_j = 2 (-1)^(j+1) (p!)^2 / (j^2 (p-j)! (p+j)!), evaluated as a product
    // to stay exact for the orders allowed here.
    for (int j = 1; j <= p; j++) {
        double ratio = 1.0;  // (p!)^2 / ((p-j)! (p+j)!)
        for (int m = 1; m <= j; m++) {
            ratio *= static_cast<double>(p - j + m) / static_cast<double>(p + m);
        }
        double sign = (j % 2 == 1) ? 1.0 : -1.0;
        c[j] = 2.0 * sign * ratio / static_cast<double>(j * j);
        c[0] -= 2.0 * c[j];
    }
    return c;
}

struct Propagator::Impl {
    Grid grid;
    double dt;
    Scheme scheme;

    // Split-step tables.
    std::unique_ptr<internal::Fft> fft;
    std::vector<Complex> kinetic_phase;
    std::vector<Complex> half_potential_phase;
    std::vector<Complex> potential_phase;

    // Implicit scheme: the diagonal [2/2] Pade approximant of exp(-i H dt),
    // unitary and fourth order in dt, applied as two linear factors
    // (1 - i dt/z H)^-1 (1 + ... ) over the roots z of its denominator.
    std::vector<double> stencil;
    std::vector<double> potential;
    std::array<Complex, 2> factor_coeff{};  // i dt / z_j
    std::vector<internal::PeriodicBandedSolver> solvers;
    std::vector<Complex> work;

    Impl(const Grid &g, const BarrierSpec &barrier, double step, Scheme s, int fd_order)
        : grid(g), dt(step), scheme(s) {
        if (!std::isfinite(dt) || dt == 0.0) {
            throw std::invalid_argument("Propagator: dt must be finite and non-zero");
        }
        potential = barrier.sample(grid);
        std::size_t n = grid.size();
        if (scheme == Scheme::kSplitStep) {
            fft = std::make_unique<internal::Fft>(n);
            kinetic_phase.resize(n);
            half_potential_phase.resize(n);
            potential_phase.resize(n);
            double inv_n = 1.0 / static_cast<double>(n);
            for (std::size_t k = 0; k < n; k++) {
                double kk = grid.wavenumber(k);
                kinetic_phase[k] = std::polar(inv_n, -0.5 * kk * kk * dt);
                half_potential_phase[k] = std::polar(1.0, -0.5 * potential[k] * dt);
                potential_phase[k] = std::polar(1.0, -potential[k] * dt);
            }
        } else {
            stencil = second_derivative_stencil(fd_order);
            build_implicit();
        }
    }

    void build_implicit() {
        std::size_t p = stencil.size() - 1;
        std::size_t n = grid.size();
        double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
        const Complex roots[2] = {Complex(3.0, std::sqrt(3.0)), Complex(3.0, -std::sqrt(3.0))};
        for (int f = 0; f < 2; f++) {
            Complex c = Complex(0.0, dt) / roots[f];
            factor_coeff[static_cast<std::size_t>(f)] = c;
            solvers.emplace_back(n, p, [&](std::size_t i, Complex *row) {
                for (std::size_t j = 0; j <= 2 * p; j++) {
                    std::size_t dist = j > p ? j - p : p - j;
                    double h = -0.5 * stencil[dist] * inv_dx2;
                    if (dist == 0) {
                        h += potential[i];
                    }
                    row[j] = c * h + (dist == 0 ? 1.0 : 0.0);
                }
            });
        }
        work.resize(n);
    }

    void advance_split(std::vector<Complex> &amp, std::size_t steps) {
        std::size_t n = amp.size();
        for (std::size_t k = 0; k < n; k++) {
            amp[k] *= half_potential_phase[k];
        }
        for (std::size_t s = 0; s < steps; s++) {
            fft->forward(amp);
            for (std::size_t k = 0; k < n; k++) {
                amp[k] *= kinetic_phase[k];
            }
            fft->backward(amp);
            const auto &phase = (s + 1 == steps) ? half_potential_phase : potential_phase;
            for (std::size_t k = 0; k < n; k++) {
                amp[k] *= phase[k];
            }
        }
    }

    void apply_hamiltonian(const std::vector<Complex> &in, std::vector<Complex> &out) const {
        auto n = static_cast<std::ptrdiff_t>(in.size());
        auto p = static_cast<std::ptrdiff_t>(stencil.size()) - 1;
        double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
        for (std::ptrdiff_t i = 0; i < n; i++) {
            Complex lap = stencil[0] * in[static_cast<std::size_t>(i)];
            for (std::ptrdiff_t j = 1; j <= p; j++) {
                std::ptrdiff_t ip = i + j >= n ? i + j - n : i + j;
                std::ptrdiff_t im = i - j < 0 ? i - j + n : i - j;
                lap += stencil[static_cast<std::size_t>(j)] *
                       (in[static_cast<std::size_t>(ip)] + in[static_cast<std::size_t>(im)]);
            }
            out[static_cast<std::size_t>(i)] =
                -0.5 * inv_dx2 * lap + potential[static_cast<std::size_t>(i)] * in[static_cast<std::size_t>(i)];
        }
    }

    void advance_implicit(std::vector<Complex> &amp, std::size_t steps) {
        std::size_t n = amp.size();
        for (std::size_t s = 0; s < steps; s++) {
            for (std::size_t f = 0; f < 2; f++) {
                apply_hamiltonian(amp, work);
                Complex c = factor_coeff[f];
                for (std::size_t i = 0; i < n; i++) {
                    amp[i] -= c * work[i];
                }
                solvers[f].solve(amp);
            }
        }
    }
};

Propagator::Propagator(const Grid &grid, const BarrierSpec &barrier, double dt, Scheme scheme, int fd_order)
    : impl_(std::make_unique<Impl>(grid, barrier, dt, scheme, fd_order)) {
}

Propagator::~Propagator() = default;
Propagator::Propagator(Propagator &&) noexcept = default;
Propagator &Propagator::operator=(Propagator &&) noexcept = default;

void Propagator::advance(std::vector<Complex> &amp, std::size_t steps) {
    if (amp.size() != impl_->grid.size()) {
        throw std::invalid_argument("Propagator::advance: state size does not match grid");
    }
    if (steps == 0) {
        return;
    }
    if (impl_->scheme == Scheme::kSplitStep) {
        impl_->advance_split(amp, steps);
    } else {
        impl_->advance_implicit(amp, steps);
    }
}

const Grid &Propagator::grid() const {
    return impl_->grid;
}

double Propagator::dt() const {
    return impl_->dt;
}

namespace {

class GuardedRun {
   public:
    GuardedRun(const WaveFunction &psi, const PropagatorConfig &cfg)
        : grid_(psi.grid()),
          margin_(cfg.resolved_edge_margin(psi.size())),
          edge_tol_(cfg.edge_tolerance),
          norm_tol_(cfg.norm_tolerance),
          norm0_(psi.norm_squared()) {
    }

    void check(const std::vector<Complex> &amp, std::size_t step) const {
        double dx = grid_.dx();
        std::size_t n = amp.size();
        double edge = 0.0;
        double total = 0.0;
        for (std::size_t k = 0; k < n; k++) {
            total += std::norm(amp[k]);
        }
        for (std::size_t k = 0; k < std::min(margin_, n / 2); k++) {
            edge += std::norm(amp[k]) + std::norm(amp[n - 1 - k]);
        }
        edge *= dx;
        total *= dx;
        if (edge > edge_tol_ * norm0_) {
            std::ostringstream msg;
            msg << "propagate: edge-density guard violated at step " << step << " (edge probability " << edge
                << " > " << edge_tol_ << "); enlarge the domain or shorten the run";
            throw NumericalGuardError(msg.str());
        }
        if (std::abs(total - norm0_) > norm_tol_ * norm0_) {
            std::ostringstream msg;
            msg << "propagate: norm drift " << std::abs(total - norm0_) << " at step " << step
                << " exceeds tolerance; dt is too large for this scheme";
            throw NumericalGuardError(msg.str());
        }
    }

   private:
    Grid grid_;
    std::size_t margin_;
    double edge_tol_;
    double norm_tol_;
    double norm0_;
};

void run(const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg, bool backward,
         const std::vector<std::size_t> &records, const SnapshotVisitor &visit) {
    if (!std::isfinite(cfg.dt) || !(cfg.dt > 0)) {
        throw std::invalid_argument("PropagatorConfig: dt must be positive");
    }
    double dt = backward ? -cfg.dt : cfg.dt;
    GuardedRun guard(psi, cfg);
    std::vector<Complex> amp(psi.amplitudes().begin(), psi.amplitudes().end());
    guard.check(amp, 0);

    auto emit = [&](std::size_t step) {
        visit(Snapshot{dt * static_cast<double>(step), step, WaveFunction(psi.grid(), amp)});
    };

    std::size_t current = 0;
    std::size_t next_record = 0;
    if (next_record < records.size() && records[next_record] == 0) {
        emit(0);
        next_record++;
    }
    std::size_t final_step = records.empty() ? 0 : records.back();
    if (final_step == 0) {
        return;
    }
    Propagator prop(psi.grid(), barrier, dt, cfg.scheme, cfg.fd_order);
    while (current < final_step) {
        std::size_t target = std::min(current + kGuardInterval, final_step);
        if (next_record < records.size()) {
            target = std::min(target, records[next_record]);
        }
        prop.advance(amp, target - current);
        current = target;
        guard.check(amp, current);
        if (next_record < records.size() && records[next_record] == current) {
            emit(current);
            next_record++;
        }
    }
}

std::vector<Snapshot> collect(const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg,
                              bool backward, const std::vector<std::size_t> &records) {
    std::vector<Snapshot> out;
    out.reserve(records.size());
    run(psi, barrier, cfg, backward, records, [&](Snapshot s) {
        out.push_back(std::move(s));
    });
    return out;
}

}  // namespace

std::vector<Snapshot> propagate(const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg) {
    return collect(psi, barrier, cfg, false, cfg.record_steps());
}

std::vector<Snapshot> propagate_backward(
    const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg) {
    return collect(psi, barrier, cfg, true, cfg.record_steps());
}

void visit_steps(const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg, bool backward,
                 std::span<const std::size_t> steps, const SnapshotVisitor &visit) {
    std::vector<std::size_t> records(steps.begin(), steps.end());
    std::sort(records.begin(), records.end());
    records.erase(std::unique(records.begin(), records.end()), records.end());
    if (!records.empty() && records.back() > cfg.n_steps) {
        throw std::invalid_argument("visit_steps: step beyond the end of the run");
    }
    run(psi, barrier, cfg, backward, records, visit);
}

WaveFunction evolve(const WaveFunction &psi, const BarrierSpec &barrier, const PropagatorConfig &cfg, bool backward) {
    auto snaps = collect(psi, barrier, cfg, backward, {cfg.n_steps});
    return snaps.back().psi;
}

double kinetic_energy(const WaveFunction &psi) {
    std::vector<Complex> spectrum(psi.amplitudes().begin(), psi.amplitudes().end());
    internal::Fft fft(spectrum.size());
    fft.forward(spectrum);
    const Grid &grid = psi.grid();
    double total = 0.0;
    for (std::size_t k = 0; k < spectrum.size(); k++) {
        double kk = grid.wavenumber(k);
        total += 0.5 * kk * kk * std::norm(spectrum[k]);
    }
    return total * grid.dx() / static_cast<double>(spectrum.size());
}

double energy_expectation(const WaveFunction &psi, const BarrierSpec &barrier) {
    std::vector<double> v = barrier.sample(psi.grid());
    double pot = 0.0;
    for (std::size_t k = 0; k < psi.size(); k++) {
        pot += v[k] * psi.density(k);
    }
    return kinetic_energy(psi) + pot * psi.grid().dx();
}

}  // namespace weakprobe
