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
#include "cli.h"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "commands.h"
#include "output.h"
#include "weakprobe/errors.h"

namespace weakprobe::cli {

namespace {

std::string echo_value(double v) {
    return format_double(v);
}
std::string echo_value(std::size_t v) {
    return std::to_string(v);
}
std::string echo_value(int v) {
    return std::to_string(v);
}
std::string echo_value(bool v) {
    return v ? "true" : "false";
}
std::string echo_value(const std::string &v) {
    std::string s = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') {
            s += '\\';
        }
        s += c;
    }
    return s + "\"";
}
std::string echo_value(const std::vector<double> &v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + format_double(v[i]);
    }
    return s + "]";
}

// Options of one subcommand together with the resolved-value echo that is
// written as config.toml next to the results.
class Command {
   public:
    Command(CLI::App &app, const std::string &name, const std::string &description)
        : sub_(app.add_subcommand(name, description)), name_(name) {
    }

    template <typename T>
    CLI::Option *option(const std::string &flag, T &value, const std::string &description) {
        CLI::Option *opt = sub_->add_option("--" + flag, value, description)->capture_default_str();
        echo_.emplace_back(flag, [&value] { return echo_value(value); });
        return opt;
    }

    CLI::Option *list(const std::string &flag, std::vector<double> &value, const std::string &description) {
        return option(flag, value, description)->delimiter(',');
    }

    CLI::App *app() const {
        return sub_;
    }
    const std::string &name() const {
        return name_;
    }

    std::string config_toml() const {
        std::string s = "[" + name_ + "]\n";
        for (const auto &[flag, value] : echo_) {
            s += flag + " = " + value() + "\n";
        }
        return s;
    }

    std::function<void(OutputDir &)> run;
    std::function<void()> prepare;

   private:
    CLI::App *sub_;
    std::string name_;
    std::vector<std::pair<std::string, std::function<std::string()>>> echo_;
};

struct ScenarioFlags {
    TunnelingScenario *target;
    std::string scheme;

    void add(Command &c) {
        TunnelingScenario &s = *target;
        scheme = scheme_name(s.scheme);
        c.option("x-min", s.x_min, "Grid start");
        c.option("x-max", s.x_max, "Grid end (periodic)");
        c.option("points", s.points, "Grid points (power of two)");
        c.option("barrier-left", s.barrier_left, "Barrier left edge");
        c.option("barrier-right", s.barrier_right, "Barrier right edge");
        c.option("v0", s.height, "Barrier height");
        c.option("x0", s.x0, "Initial packet center");
        c.option("sigma-x", s.sigma, "Initial packet width");
        c.option("energy", s.energy, "Mean packet energy");
        c.option("time", s.total_time, "Total run time");
        c.option("dt", s.dt, "Time step");
        c.option("scheme", scheme, "split-step or implicit-fd")
            ->check(CLI::IsMember({"split-step", "implicit-fd"}));
        c.option("fd-order", s.fd_order, "Finite-difference order of the implicit scheme");
        c.option("edge-tolerance", s.edge_tolerance, "Probability allowed near the grid ends");
    }

    void resolve() const {
        target->scheme = parse_scheme(scheme.c_str());
    }
};

std::filesystem::path default_output(const std::string &command) {
    const char *root = std::getenv("WEAKPROBE_OUT");
    std::filesystem::path base = (root != nullptr && *root != '\0') ? root : "weakprobe-out";
    return base / command;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Tunnelling, weak-value and pointer-correlation experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML file with a [subcommand] section; flags override it");
    std::string out_dir;
    app.add_option("--out", out_dir, "Output directory (default $WEAKPROBE_OUT/<subcommand>)")
        ->configurable(false);
    app.fallthrough();

    std::vector<std::unique_ptr<Command>> commands;
    auto make = [&](const std::string &name, const std::string &description) -> Command & {
        commands.push_back(std::make_unique<Command>(app, name, description));
        return *commands.back();
    };

    Fig2Params fig2;
    ScenarioFlags fig2_scenario{&fig2.scenario, {}};
    {
        Command &c = make("fig2", "Conditional position distribution for transmitted particles");
        fig2_scenario.add(c);
        c.option("records", fig2.records, "Recorded times, spread over the run");
        c.option("offset", fig2.offset, "Post-selection starts this far right of the barrier");
        c.option("snapshots", fig2.snapshots, "Also write the forward wavefunction snapshots");
        c.prepare = [&] { fig2_scenario.resolve(); };
        c.run = [&](OutputDir &o) { run_fig2(fig2, o); };
    }

    DwellParams dwell;
    ScenarioFlags dwell_scenario{&dwell.scenario, {}};
    {
        Command &c = make("dwell", "Conditional dwell time inside the barrier");
        dwell_scenario.add(c);
        c.option("postselect", dwell.postselect, "transmitted or none")
            ->check(CLI::IsMember({"transmitted", "none"}));
        c.option("offset", dwell.offset, "Post-selection starts this far right of the barrier");
        c.option("samples", dwell.samples, "Time samples for the integral");
        c.prepare = [&] { dwell_scenario.resolve(); };
        c.run = [&](OutputDir &o) { run_dwell(dwell, o); };
    }

    TwoProbeParams two;
    ScenarioFlags two_scenario{&two.scenario, {}};
    {
        Command &c = make("two-probe", "Weak probes left and right of the barrier on transmitted particles");
        two_scenario.add(c);
        c.option("offset", two.offset, "Post-selection starts this far right of the barrier");
        c.option("delta", two.delta, "Coupling strength of each probe");
        c.option("pointer-sigma", two.pointer_sigma, "Pointer width");
        c.option("kicks", two.kicks, "Kicks per probe window");
        c.option("window-a-begin", two.window_a_begin, "Probe A window start");
        c.option("window-a-end", two.window_a_end, "Probe A window end");
        c.option("window-b-begin", two.window_b_begin, "Probe B window start (negative: end - 20)");
        c.option("window-b-end", two.window_b_end, "Probe B window end (negative: end of run)");
        c.option("sign-a", two.sign_a, "Probe A direction (+1 or -1)")->check(CLI::IsMember({-1, 1}));
        c.option("sign-b", two.sign_b, "Probe B direction (+1 or -1)")->check(CLI::IsMember({-1, 1}));
        c.option("alpha", two.alpha, "Significance level");
        c.prepare = [&] { two_scenario.resolve(); };
        c.run = [&](OutputDir &o) { run_two_probe(two, o); };
    }

    PointerParams variance, erased, certain;
    {
        Command &c = make("variance", "Pointer moments of the which-path state");
        c.option("delta", variance.delta, "Pointer shift");
        c.option("sigma", variance.sigma, "Pointer width");
        c.option("points", variance.points, "Quadrature points per axis");
        c.option("alpha", variance.alpha, "Significance level");
        c.run = [&](OutputDir &o) { run_variance(variance, o); };
    }
    {
        Command &c = make("erased", "Pointer moments after erasing which-path information");
        c.option("delta", erased.delta, "Pointer shift");
        c.option("sigma", erased.sigma, "Pointer width");
        c.option("points", erased.points, "Quadrature points per axis");
        c.option("alpha", erased.alpha, "Significance level");
        c.run = [&](OutputDir &o) { run_erased(erased, o); };
    }
    {
        Command &c = make("certain", "Pointer moments when both pointers shift with certainty");
        c.option("delta-a", certain.delta_a, "Shift of pointer A");
        c.option("delta-b", certain.delta_b, "Shift of pointer B");
        c.option("sigma", certain.sigma, "Pointer width");
        c.option("points", certain.points, "Quadrature points per axis");
        c.option("alpha", certain.alpha, "Significance level");
        c.run = [&](OutputDir &o) { run_certain(certain, o); };
    }

    HartmanParams hartman;
    {
        Command &c = make("hartman", "Group delay versus barrier width");
        c.option("e", hartman.energy, "Energy");
        c.option("v0", hartman.height, "Barrier height");
        c.list("d", hartman.widths, "Barrier widths, comma separated");
        c.run = [&](OutputDir &o) { run_hartman(hartman, o); };
    }

    ScatterParams scatter;
    {
        Command &c = make("scatter", "Transmission and reflection amplitudes versus energy");
        c.list("energies", scatter.energies, "Energies, comma separated");
        c.option("v0", scatter.height, "Barrier height");
        c.option("width", scatter.width, "Barrier width");
        c.run = [&](OutputDir &o) { run_scatter(scatter, o); };
    }

    CorpuscleParams sim;
    auto model_flags = [](Command &c, CorpuscleParams &m) {
        c.option("p", m.p, "Probability that pointer A is hit");
        c.option("delta-a", m.delta_a, "Shift of pointer A when hit");
        c.option("delta-b", m.delta_b, "Shift of pointer B when hit");
        c.option("sigma", m.sigma, "Pointer noise width");
        c.option("n", m.n, "Number of pairs");
        c.option("seed", m.seed, "Sampling seed");
    };
    {
        Command &c = make("corpuscle-sim", "Sample pointer readings from the corpuscular model");
        model_flags(c, sim);
        c.run = [&](OutputDir &o) { run_corpuscle_sim(sim, o); };
    }

    CorpuscleTestParams test;
    {
        Command &c = make("corpuscle-test", "Bootstrap test of the corpuscular variance bound");
        c.option("samples", test.samples, "CSV with columns pair_index,a,b (overrides --source)");
        c.option("source", test.source, "corpuscular or certain")
            ->check(CLI::IsMember({"corpuscular", "certain"}));
        model_flags(c, test.model);
        c.option("sigma0", test.sigma0, "Calibrated pointer noise width");
        c.option("alpha", test.alpha, "Significance level");
        c.option("resamples", test.resamples, "Bootstrap resamples");
        c.option("bootstrap-seed", test.bootstrap_seed, "Bootstrap seed");
        c.run = [&](OutputDir &o) { run_corpuscle_test(test, o); };
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidConfig;
    }

    for (const auto &command : commands) {
        if (!command->app()->parsed()) {
            continue;
        }
        try {
            if (command->prepare) {
                command->prepare();
            }
            std::filesystem::path dir = out_dir.empty() ? default_output(command->name()) : std::filesystem::path(out_dir);
            OutputDir output(dir);
            output.write("config.toml", command->config_toml());
            command->run(output);
            output.finish();
            out << "wrote " << dir.string() << "\n";
            return kExitOk;
        } catch (const NumericalGuardError &e) {
            err << "numerical guard: " << e.what() << "\n";
            return kExitNumericalGuard;
        } catch (const IoError &e) {
            err << "i/o error: " << e.what() << "\n";
            return kExitIo;
        } catch (const std::filesystem::filesystem_error &e) {
            err << "i/o error: " << e.what() << "\n";
            return kExitIo;
        } catch (const std::invalid_argument &e) {
            err << "invalid configuration: " << e.what() << "\n";
            return kExitInvalidConfig;
        }
    }
    return kExitInvalidConfig;
}

}  // namespace weakprobe::cli
