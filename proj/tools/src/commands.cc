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
#include "commands.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "weakprobe/corpuscle.h"
#include "weakprobe/errors.h"
#include "weakprobe/pointer.h"
#include "weakprobe/scatter.h"
#include "weakprobe/two_probe.h"
#include "weakprobe/weak_value.h"

namespace weakprobe::cli {

namespace {

std::string g(double v) {
    return format_double(v);
}

JsonObject moments_json(const PointerMoments &m) {
    JsonObject o;
    o.add("mean_a", m.mean_a)
        .add("mean_b", m.mean_b)
        .add("var_a", m.var_a)
        .add("var_b", m.var_b)
        .add("var_diff", m.var_diff)
        .add("postselect_prob", m.postselect_prob);
    return o;
}

JsonObject report_json(const EnsembleStats &s) {
    JsonObject o;
    o.add("n", s.n)
        .add("mean_a", s.mean_a)
        .add("mean_b", s.mean_b)
        .add("var_diff", s.var_diff)
        .add("ci", std::vector<double>{s.ci_low, s.ci_high})
        .add("bound", s.bound)
        .add("alpha", s.alpha)
        .add("verdict", verdict_name(s.verdict))
        .add("seed", static_cast<std::size_t>(s.seed));
    return o;
}

void write_pointer_outputs(const JointPointerState &state, double alpha, OutputDir &out) {
    PointerMoments m = state.moments();
    out.write("moments.json", moments_json(m).str());
    out.write("report.json", report_json(corpuscularity_test(m, state.sigma(), alpha)).str());
}

CorpuscularModel to_model(const CorpuscleParams &p) {
    CorpuscularModel m;
    m.p = p.p;
    m.delta_a = p.delta_a;
    m.delta_b = p.delta_b;
    m.sigma = p.sigma;
    m.n = p.n;
    m.seed = p.seed;
    return m;
}

std::string samples_csv(const PairSamples &s) {
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "pair_index,a,b\n");
    for (std::size_t i = 0; i < s.size(); ++i) {
        fmt::format_to(std::back_inserter(buf), "{},{},{}\n", i, g(s.a[i]), g(s.b[i]));
    }
    return fmt::to_string(buf);
}

double parse_field(const std::string &field, const std::string &path, std::size_t line) {
    try {
        std::size_t used = 0;
        double v = std::stod(field, &used);
        if (used == field.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw std::invalid_argument(fmt::format("{}:{}: not a number: '{}'", path, line, field));
}

PairSamples read_samples_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read samples file " + path);
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("pair_index,a,b", 0) != 0) {
        throw std::invalid_argument(path + ": expected header 'pair_index,a,b'");
    }
    PairSamples s;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::stringstream ss(line);
        std::string idx, a, b, extra;
        if (!std::getline(ss, idx, ',') || !std::getline(ss, a, ',') || !std::getline(ss, b, ',') ||
            std::getline(ss, extra, ',')) {
            throw std::invalid_argument(fmt::format("{}:{}: expected three columns", path, line_no));
        }
        s.a.push_back(parse_field(a, path, line_no));
        s.b.push_back(parse_field(b, path, line_no));
    }
    return s;
}

}  // namespace

ZoneWeights zone_weights(const ConditionalDistribution &dist, std::size_t j, const BarrierSpec &barrier) {
    double third = barrier.span() / 3.0;
    double lo = dist.grid.x_min();
    double hi = dist.grid.x_max();
    ZoneWeights w;
    w.entrance = dist.weight(j, lo, barrier.left_edge() + third);
    w.center = dist.weight(j, barrier.left_edge() + third, barrier.right_edge() - third);
    w.exit = dist.weight(j, barrier.right_edge() - third, hi);
    w.total = dist.total(j);
    return w;
}

Fig2Summary summarize_fig2(const ConditionalDistribution &dist, const BarrierSpec &barrier) {
    Fig2Summary s;
    for (std::size_t j = 0; j < dist.times.size(); ++j) {
        ZoneWeights w = zone_weights(dist, j, barrier);
        double peak = std::abs(w.entrance) + std::abs(w.exit);
        double ratio = peak > 0.0 ? std::abs(w.center) / peak : INFINITY;
        s.zones.push_back(w);
        s.center_ratio.push_back(ratio);
        s.max_center_ratio = std::max(s.max_center_ratio, ratio);
        s.max_normalization_error = std::max(s.max_normalization_error, std::abs(w.total - 1.0));
    }
    if (!s.zones.empty()) {
        s.entrance_first = s.zones.front().entrance > s.zones.front().exit;
        s.exit_last = s.zones.back().exit > s.zones.back().entrance;
    }
    return s;
}

void run_fig2(const Fig2Params &p, OutputDir &out) {
    p.scenario.validate();
    if (p.records < 2) {
        throw std::invalid_argument("fig2 needs at least 2 records");
    }
    PropagatorConfig cfg = p.scenario.config();
    BarrierSpec barrier = p.scenario.barrier();
    WaveFunction packet = p.scenario.packet();
    PrePostPair pair = postselect_transmitted(packet, barrier, cfg, p.offset);
    cfg.record_times = spread_record_times(cfg, p.records);
    ConditionalDistribution dist = conditional_distribution(pair, barrier, cfg);

    const Grid &grid = dist.grid;
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "t,x,re_value,im_value\n");
    for (std::size_t j = 0; j < dist.times.size(); ++j) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            fmt::format_to(std::back_inserter(buf), "{},{},{},{}\n", g(dist.times[j]), g(grid.x(k)),
                           g(dist.re[j][k]), g(dist.im[j][k]));
        }
    }
    out.write("conditional.csv", std::string_view(buf.data(), buf.size()));

    if (p.snapshots) {
        buf.clear();
        fmt::format_to(std::back_inserter(buf), "t,x,re_amp,im_amp,density\n");
        for (const Snapshot &snap : propagate(packet, barrier, cfg)) {
            for (std::size_t k = 0; k < grid.size(); ++k) {
                Complex a = snap.psi[k];
                fmt::format_to(std::back_inserter(buf), "{},{},{},{},{}\n", g(snap.time), g(grid.x(k)), g(a.real()),
                               g(a.imag()), g(std::norm(a)));
            }
        }
        out.write("snapshots.csv", std::string_view(buf.data(), buf.size()));
    }

    Fig2Summary s = summarize_fig2(dist, barrier);
    std::vector<double> totals, entrance, center, exit;
    for (const ZoneWeights &w : s.zones) {
        totals.push_back(w.total);
        entrance.push_back(w.entrance);
        center.push_back(w.center);
        exit.push_back(w.exit);
    }
    JsonObject summary;
    summary.add("success_probability", pair.success_probability())
        .add("times", dist.times)
        .add("totals", totals)
        .add("entrance_weight", entrance)
        .add("center_weight", center)
        .add("exit_weight", exit)
        .add("center_ratio", s.center_ratio)
        .add("max_center_ratio", s.max_center_ratio)
        .add("max_normalization_error", s.max_normalization_error)
        .add_raw("entrance_first", s.entrance_first ? "true" : "false")
        .add_raw("exit_last", s.exit_last ? "true" : "false");
    out.write("fig2_summary.json", summary.str());
}

void run_dwell(const DwellParams &p, OutputDir &out) {
    p.scenario.validate();
    PropagatorConfig cfg = p.scenario.config();
    BarrierSpec barrier = p.scenario.barrier();
    WaveFunction packet = p.scenario.packet();
    if (p.postselect != "transmitted" && p.postselect != "none") {
        throw std::invalid_argument("postselect must be 'transmitted' or 'none', got '" + p.postselect + "'");
    }
    PrePostPair pair = p.postselect == "transmitted" ? postselect_transmitted(packet, barrier, cfg, p.offset)
                                                     : postselect_everything(packet, barrier, cfg);
    std::pair<double, double> region{barrier.left_edge(), barrier.right_edge()};
    double dwell = conditional_dwell_time(pair, region, barrier, cfg, p.samples);
    JsonObject o;
    o.add("postselect", p.postselect)
        .add("region", std::vector<double>{region.first, region.second})
        .add("success_probability", pair.success_probability())
        .add("dwell_time", dwell);
    out.write("dwell.json", o.str());
}

void run_two_probe(const TwoProbeParams &p, OutputDir &out) {
    p.scenario.validate();
    PropagatorConfig cfg = p.scenario.config();
    BarrierSpec barrier = p.scenario.barrier();
    PrePostPair pair = postselect_transmitted(p.scenario.packet(), barrier, cfg, p.offset);
    double T = cfg.total_time();
    double b_begin = p.window_b_begin < 0.0 ? T - 20.0 : p.window_b_begin;
    double b_end = p.window_b_end < 0.0 ? T : p.window_b_end;

    WeakProbe a{RegionTarget{p.scenario.x_min, barrier.center()}, p.delta, p.window_a_begin, p.window_a_end,
                p.sign_a};
    WeakProbe b{RegionTarget{barrier.center(), p.scenario.x_max}, p.delta, b_begin, b_end, p.sign_b};
    TwoProbeOptions opt;
    opt.sigma = p.pointer_sigma;
    opt.kicks = p.kicks;
    TwoProbeResult r = two_probe_run(pair, a, b, barrier, cfg, opt);
    EnsembleStats stats = corpuscularity_test(r.moments, p.pointer_sigma, p.alpha);

    out.write("moments.json", moments_json(r.moments).str());
    out.write("report.json", report_json(stats).str());
    JsonObject o;
    o.add("window_a", std::vector<double>{a.t_begin, a.t_end})
        .add("window_b", std::vector<double>{b.t_begin, b.t_end})
        .add("weak_a", std::vector<double>{r.weak_a.real(), r.weak_a.imag()})
        .add("weak_b", std::vector<double>{r.weak_b.real(), r.weak_b.imag()})
        .add("shift_a", r.shift_a)
        .add("shift_b", r.shift_b)
        .add("net_internal_shift", r.net_internal_shift)
        .add("success_probability", pair.success_probability())
        .add("warnings", r.warnings);
    out.write("two_probe.json", o.str());
}

void run_variance(const PointerParams &p, OutputDir &out) {
    write_pointer_outputs(which_path_state(p.delta, p.sigma, p.points), p.alpha, out);
}

void run_erased(const PointerParams &p, OutputDir &out) {
    JointPointerState erased = erase_and_postselect(which_path_state(p.delta, p.sigma, p.points));
    write_pointer_outputs(erased, p.alpha, out);
    double c = PointerState(0.0, p.sigma).overlap(PointerState(p.delta, p.sigma));
    PointerMoments m = erased.moments();
    JsonObject o;
    o.add("delta", p.delta)
        .add("sigma", p.sigma)
        .add("overlap", c)
        .add("normalization", erased_normalization(p.delta, p.sigma))
        .add("var_diff", m.var_diff)
        .add("closed_form_var_diff", 2.0 * p.sigma * p.sigma + p.delta * p.delta / (1.0 + c * c))
        .add("which_path_var_diff", 2.0 * p.sigma * p.sigma + p.delta * p.delta)
        .add("unshifted_var_diff", 2.0 * p.sigma * p.sigma);
    out.write("erased.json", o.str());
}

void run_certain(const PointerParams &p, OutputDir &out) {
    write_pointer_outputs(certain_shift_state(p.delta_a, p.delta_b, p.sigma, p.points), p.alpha, out);
}

void run_hartman(const HartmanParams &p, OutputDir &out) {
    if (p.widths.empty()) {
        throw std::invalid_argument("hartman needs at least one barrier width");
    }
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "d,group_delay,free_time,transmission\n");
    for (double d : p.widths) {
        if (!(d > 0.0)) {
            throw std::invalid_argument("barrier widths must be positive");
        }
        BarrierSpec barrier = BarrierSpec::rectangular(0.0, d, p.height);
        GroupDelay delay = group_delay(p.energy, barrier);
        ScatterResult s = transfer_matrix_amplitudes(p.energy, barrier);
        fmt::format_to(std::back_inserter(buf), "{},{},{},{}\n", g(d), g(delay.delay), g(d / s.k),
                       g(s.transmission()));
    }
    out.write("hartman.csv", std::string_view(buf.data(), buf.size()));
}

void run_scatter(const ScatterParams &p, OutputDir &out) {
    BarrierSpec barrier = BarrierSpec::rectangular(0.0, p.width, p.height);
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf),
                   "energy,k,re_t,im_t,re_r,im_r,transmission,reflection,traversal_phase\n");
    for (double e : p.energies) {
        ScatterResult s = transfer_matrix_amplitudes(e, barrier);
        fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{},{}\n", g(e), g(s.k), g(s.t.real()),
                       g(s.t.imag()), g(s.r.real()), g(s.r.imag()), g(s.transmission()), g(s.reflection()),
                       g(s.traversal_phase()));
    }
    out.write("scatter.csv", std::string_view(buf.data(), buf.size()));
}

void run_corpuscle_sim(const CorpuscleParams &p, OutputDir &out) {
    CorpuscularModel model = to_model(p);
    model.validate();
    PairSamples s = simulate_corpuscular(model);
    out.write("samples.csv", samples_csv(s));

    double n = static_cast<double>(s.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        ma += s.a[i];
        mb += s.b[i];
    }
    ma /= n;
    mb /= n;
    double ss = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double d = (s.a[i] - s.b[i]) - (ma - mb);
        ss += d * d;
    }
    JsonObject o;
    o.add("n", s.size())
        .add("seed", static_cast<std::size_t>(p.seed))
        .add("mean_a", ma)
        .add("mean_b", mb)
        .add("var_diff", s.size() > 1 ? ss / (n - 1.0) : 0.0)
        .add("population_var_diff", model.variance_of_difference())
        .add("bound", corpuscular_bound_for_means(model.mean_a(), model.mean_b(), p.sigma));
    out.write("summary.json", o.str());
}

void run_corpuscle_test(const CorpuscleTestParams &p, OutputDir &out) {
    PairSamples s;
    if (!p.samples.empty()) {
        s = read_samples_csv(p.samples);
    } else if (p.source == "corpuscular") {
        CorpuscularModel model = to_model(p.model);
        model.validate();
        s = simulate_corpuscular(model);
    } else if (p.source == "certain") {
        s = sample_certain_shift(p.model.delta_a, p.model.delta_b, p.model.sigma, p.model.n, p.model.seed);
    } else {
        throw std::invalid_argument("source must be 'corpuscular' or 'certain', got '" + p.source + "'");
    }
    CorpuscularityOptions opt;
    opt.alpha = p.alpha;
    opt.resamples = p.resamples;
    opt.seed = p.bootstrap_seed;
    out.write("report.json", report_json(corpuscularity_test(s, p.sigma0, opt)).str());
}

}  // namespace weakprobe::cli
