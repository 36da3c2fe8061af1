// Copyright 2026 The noisescramble Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Command-line front end: sweep, metrics, fit and alpha-scan.

#include "noisescramble.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ns = noisescramble;
namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string config;
    std::string out;
    std::optional<std::size_t> seeds;
    std::optional<double> proxy_w;
    std::optional<double> proxy_c;
    std::optional<std::size_t> threads;
    std::optional<std::string> metric;
};

void add_common(CLI::App *cmd, CommonOptions &o, bool need_config) {
    auto *c = cmd->add_option("--config", o.config, "experiment config (JSON)");
    if (need_config) {
        c->required()->check(CLI::ExistingFile);
    }
    cmd->add_option("--out", o.out, "output path");
    cmd->add_option("--seeds", o.seeds, "number of seeds (labels 0..n-1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon-proxy-w", o.proxy_w,
                    "vanishing-noise proxy for W (default 1e-8)");
    cmd->add_option("--epsilon-proxy-c", o.proxy_c,
                    "vanishing-noise proxy for C (default 1e-7)");
    cmd->add_option("--threads", o.threads, "worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--metric", o.metric, "W, C or both")
        ->check(CLI::IsMember({"W", "C", "both"}));
}

ns::ExperimentConfig load_config(const CommonOptions &o) {
    auto c = ns::load_experiment_config(o.config);
    if (o.seeds) {
        c.seeds.clear();
        for (std::uint64_t k = 0; k < *o.seeds; ++k) {
            c.seeds.push_back(k);
        }
    }
    if (o.proxy_w) {
        c.epsilon_proxy_w = *o.proxy_w;
    }
    if (o.proxy_c) {
        c.epsilon_proxy_c = *o.proxy_c;
    }
    if (o.threads) {
        c.threads = *o.threads;
    }
    if (o.metric) {
        c.metric = ns::parse_metric_selection(*o.metric);
    }
    if (!o.out.empty()) {
        c.output = o.out;
    }
    c.validate();
    return c;
}

std::vector<ns::MetricKind> metric_kinds(ns::MetricSelection m) {
    switch (m) {
    case ns::MetricSelection::W: return {ns::MetricKind::W};
    case ns::MetricSelection::C: return {ns::MetricKind::C};
    case ns::MetricSelection::Both: break;
    }
    return {ns::MetricKind::W, ns::MetricKind::C};
}

std::ofstream open_out(const fs::path &p) {
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
    std::ofstream out(p);
    if (!out) {
        ns::fail(ns::ErrorCode::Io, "cannot write " + p.string());
    }
    return out;
}

/// Fits every group; writes the table to `table` and plot files to plot_dir.
std::vector<ns::AggregateResult>
fit_groups(const std::vector<ns::ResultRow> &rows,
           const std::vector<ns::MetricKind> &kinds, std::ostream &table,
           const std::string &plot_dir) {
    std::vector<ns::AggregateResult> fits;
    ns::write_fit_table_header(table);
    for (const auto &[key, group] : ns::group_rows(rows)) {
        for (auto kind : kinds) {
            auto agg = ns::aggregate_and_fit(group, kind);
            ns::write_fit_table_row(table, agg);
            if (!plot_dir.empty()) {
                const auto name = key.family + "_N" + std::to_string(key.n_qubits) +
                                  "_eps" + ns::format_double(key.epsilon) + "_" +
                                  std::string(ns::to_string(kind)) + ".csv";
                auto out = open_out(fs::path(plot_dir) / name);
                ns::write_plot_data(out, agg);
            }
            fits.push_back(std::move(agg));
        }
    }
    return fits;
}

int cmd_sweep(const CommonOptions &o, const std::string &plot_dir) {
    const auto c = load_config(o);
    auto out = open_out(c.output);
    const auto rows = ns::run_sweep_to_csv(c, out);
    std::cerr << "wrote " << rows.size() << " rows to " << c.output.string() << '\n';
    if (!plot_dir.empty()) {
        auto table = open_out(fs::path(plot_dir) / "fits.csv");
        fit_groups(rows, metric_kinds(c.metric), table, plot_dir);
    }
    return 0;
}

int cmd_metrics(const CommonOptions &o, std::optional<std::size_t> layers,
                std::optional<double> epsilon, std::uint64_t seed) {
    const auto c = load_config(o);
    ns::check_resources(c);
    const ns::SweepContext ctx(c);
    ns::SweepPoint p;
    p.epsilon = epsilon ? *epsilon : c.epsilon_grid().front();
    p.layer_index = 0;
    p.layers = layers ? *layers : c.layers.front();
    p.seed = seed;
    const auto program = ns::build_point_circuit(ctx, p);
    const auto rho = ns::run_circuit(program, ns::DensityMatrix(c.n_qubits));
    const auto psi = ns::run_ideal(program, ns::basis_state(c.n_qubits));
    const double nu = static_cast<double>(program.gate_count());
    const auto r = ns::analyze(rho, psi, std::exp(nu * std::log1p(-p.epsilon)));
    const auto opt = [](const std::optional<double> &v) {
        return v ? ns::format_double(*v) : std::string("null");
    };
    std::cout << "family=" << ns::to_string(c.family) << '\n'
              << "n_qubits=" << c.n_qubits << '\n'
              << "epsilon=" << ns::format_double(p.epsilon) << '\n'
              << "layers=" << p.layers << '\n'
              << "nu=" << program.gate_count() << '\n'
              << "F=" << ns::format_double(r.fidelity) << '\n'
              << "lambda1=" << ns::format_double(r.lambda1) << '\n'
              << "W=" << opt(r.uniformity) << '\n'
              << "C=" << opt(r.commutator_norm_rel) << '\n'
              << "C_abs=" << ns::format_double(r.commutator_norm_abs) << '\n'
              << "trace_dist_wn=" << ns::format_double(r.trace_dist_wn) << '\n'
              << "eta_est=" << opt(r.eta_estimate) << '\n'
              << "E_F=" << opt(r.fidelity_error) << '\n';
    if (!r.null_reason.empty()) {
        std::cout << "null_reason=" << r.null_reason << '\n';
    }
    return 0;
}

int cmd_fit(const std::string &input, const std::string &out_path,
            const std::optional<std::string> &metric, const std::string &plot_dir) {
    std::ifstream in(input);
    if (!in) {
        ns::fail(ns::ErrorCode::Io, "cannot open " + input);
    }
    const auto rows = ns::read_results(in);
    const auto kinds =
        metric_kinds(metric ? ns::parse_metric_selection(*metric) : ns::MetricSelection::W);
    if (out_path.empty()) {
        fit_groups(rows, kinds, std::cout, plot_dir);
    } else {
        auto out = open_out(out_path);
        fit_groups(rows, kinds, out, plot_dir);
    }
    return 0;
}

int cmd_alpha_scan(const CommonOptions &o, const std::vector<std::size_t> &qubits,
                   const std::string &plot_dir) {
    auto base = load_config(o);
    const auto kinds = metric_kinds(base.metric);
    const fs::path stem = base.output.parent_path() / base.output.stem();
    std::map<ns::MetricKind, std::map<std::size_t, ns::ScalingFit>> by_metric;
    for (auto n : qubits) {
        auto c = base;
        c.n_qubits = n;
        c.output = stem.string() + "_N" + std::to_string(n) + ".csv";
        auto out = open_out(c.output);
        const auto rows = ns::run_sweep_to_csv(c, out);
        std::cerr << "N=" << n << ": wrote " << rows.size() << " rows to "
                  << c.output.string() << '\n';
        std::ostringstream sink;
        for (const auto &agg : fit_groups(rows, kinds, sink, plot_dir)) {
            // With several epsilons the first group per (N, metric) is kept.
            by_metric[agg.metric].emplace(n, agg.fit);
        }
    }
    std::cout << "metric,n_qubits,alpha,beta\n";
    for (const auto &[kind, fits] : by_metric) {
        const auto table = ns::alpha_vs_qubits(fits);
        for (const auto &row : table.rows) {
            std::cout << ns::to_string(kind) << ',' << row.n_qubits << ','
                      << ns::format_double(row.alpha) << ','
                      << ns::format_double(row.beta) << '\n';
        }
        std::cout << "# " << ns::to_string(kind)
                  << (table.saturated ? " alpha saturated" : " alpha not saturated")
                  << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noise scrambling metrics for variational circuits"};
    app.require_subcommand(1);

    CommonOptions sweep_opts;
    std::string sweep_plot_dir;
    auto *sweep = app.add_subcommand("sweep", "run an experiment config, write CSV");
    add_common(sweep, sweep_opts, true);
    sweep->add_option("--plot-dir", sweep_plot_dir, "also write fits and plot data here");

    CommonOptions metrics_opts;
    std::optional<std::size_t> metrics_layers;
    std::optional<double> metrics_eps;
    std::uint64_t metrics_seed = 0;
    auto *metrics = app.add_subcommand("metrics", "one circuit, print its spectral report");
    add_common(metrics, metrics_opts, true);
    metrics->add_option("--layers", metrics_layers, "layer count (default: first in grid)");
    metrics->add_option("--epsilon", metrics_eps, "per-gate error (default: first in grid)");
    metrics->add_option("--seed", metrics_seed, "seed label");

    std::string fit_in;
    std::string fit_out;
    std::optional<std::string> fit_metric;
    std::string fit_plot_dir;
    auto *fit = app.add_subcommand("fit", "fit the scaling model to a results CSV");
    fit->add_option("input", fit_in, "results CSV")->required()->check(CLI::ExistingFile);
    fit->add_option("--out", fit_out, "fit table CSV (default stdout)");
    fit->add_option("--metric", fit_metric, "W, C or both (default W)")
        ->check(CLI::IsMember({"W", "C", "both"}));
    fit->add_option("--plot-dir", fit_plot_dir, "write plot data files here");

    CommonOptions scan_opts;
    std::vector<std::size_t> scan_qubits;
    std::string scan_plot_dir;
    auto *scan = app.add_subcommand("alpha-scan", "sweep and fit over several N");
    add_common(scan, scan_opts, true);
    scan->add_option("--qubits", scan_qubits, "qubit counts")->required()->delimiter(',');
    scan->add_option("--plot-dir", scan_plot_dir, "write plot data files here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            return cmd_sweep(sweep_opts, sweep_plot_dir);
        }
        if (*metrics) {
            return cmd_metrics(metrics_opts, metrics_layers, metrics_eps, metrics_seed);
        }
        if (*fit) {
            return cmd_fit(fit_in, fit_out, fit_metric, fit_plot_dir);
        }
        if (*scan) {
            return cmd_alpha_scan(scan_opts, scan_qubits, scan_plot_dir);
        }
    } catch (const ns::Error &e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
