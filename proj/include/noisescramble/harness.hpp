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
#pragma once

#include "noisescramble/ansatz.hpp"
#include "noisescramble/config.hpp"
#include "noisescramble/error.hpp"
#include "noisescramble/pauli.hpp"
#include "noisescramble/random.hpp"
#include "noisescramble/results.hpp"
#include "noisescramble/scaling_fit.hpp"
#include "noisescramble/simulator.hpp"
#include "noisescramble/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace noisescramble {

/// One cell of the sweep grid.
struct SweepPoint {
    double epsilon = 0.0;
    std::size_t layer_index = 0;
    std::size_t layers = 0;
    std::uint64_t seed = 0; ///< seed label from the config
};

/// hash(base seed, family, N, eps, layer index, seed label). Stable across
/// runs and platforms, and independent of which other points are swept.
inline std::uint64_t row_seed(const ExperimentConfig &c, const SweepPoint &p) {
    return SeedHasher(c.base_seed)
        .mix(to_string(c.family))
        .mix(static_cast<std::uint64_t>(c.n_qubits))
        .mix(p.epsilon)
        .mix(static_cast<std::uint64_t>(p.layer_index))
        .mix(p.seed)
        .value();
}

/// Couplings of the model Hamiltonian; shared by every nu and eps of a seed so
/// each curve follows one problem instance.
inline std::uint64_t hamiltonian_seed(const ExperimentConfig &c,
                                      std::uint64_t seed_label) {
    return SeedHasher(c.base_seed)
        .mix(std::string_view("hamiltonian"))
        .mix(static_cast<std::uint64_t>(c.n_qubits))
        .mix(seed_label)
        .value();
}

/// Grid order: epsilon, then layers, then seed. Rows are emitted in this order.
inline std::vector<SweepPoint> sweep_points(const ExperimentConfig &c) {
    std::vector<SweepPoint> out;
    for (double eps : c.epsilon_grid()) {
        for (std::size_t li = 0; li < c.layers.size(); ++li) {
            for (auto s : c.seeds) {
                out.push_back({eps, li, c.layers[li], s});
            }
        }
    }
    return out;
}

/// Rough peak bytes held by one worker: rho, the eigensolver's copy and
/// workspace, and the commutator / white-noise matrices.
inline std::size_t estimated_bytes_per_worker(std::size_t n_qubits) {
    if (n_qubits >= 30) {
        return static_cast<std::size_t>(-1);
    }
    const std::size_t d = std::size_t{1} << n_qubits;
    return 5 * d * d * sizeof(Complex);
}

/// Resource check run before any simulation.
inline void check_resources(const ExperimentConfig &c) {
    if (c.n_qubits > kMaxQubits) {
        fail(ErrorCode::Resource, "N = " + std::to_string(c.n_qubits) +
                                      " exceeds the dense simulator limit of " +
                                      std::to_string(kMaxQubits) + " qubits");
    }
    const auto per = estimated_bytes_per_worker(c.n_qubits);
    const auto workers = std::max<std::size_t>(1, c.threads);
    if (per > c.memory_limit_bytes / workers) {
        fail(ErrorCode::Resource,
             "N = " + std::to_string(c.n_qubits) + " with " +
                 std::to_string(workers) + " thread(s) needs about " +
                 std::to_string(per * workers >> 20U) + " MiB, limit is " +
                 std::to_string(c.memory_limit_bytes >> 20U) + " MiB");
    }
}

/// Everything a point evaluation needs besides the point itself.
struct SweepContext {
    ExperimentConfig config;
    std::optional<PauliTermHamiltonian> file_hamiltonian;

    explicit SweepContext(ExperimentConfig c) : config(std::move(c)) {
        if (config.hamiltonian_file) {
            file_hamiltonian = load_hamiltonian_file(*config.hamiltonian_file);
            if (file_hamiltonian->n_qubits() != config.n_qubits) {
                fail(ErrorCode::Shape, "Hamiltonian file acts on " +
                                           std::to_string(file_hamiltonian->n_qubits()) +
                                           " qubits, config says " +
                                           std::to_string(config.n_qubits));
            }
        }
    }
};

inline CircuitProgram build_point_circuit(const SweepContext &ctx,
                                          const SweepPoint &p) {
    const auto &c = ctx.config;
    AnsatzSpec spec{c.family,         c.n_qubits, p.layers,
                    c.parameter_mode, row_seed(c, p), c.sparse_terms_per_layer};
    auto inst = build_ansatz(spec, hamiltonian_seed(c, p.seed), ctx.file_hamiltonian);
    inst.program.noise = {p.epsilon, c.convention};
    return inst.program;
}

/// Simulates one point and computes its spectral report.
inline ResultRow evaluate_point(const SweepContext &ctx, const SweepPoint &p) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto program = build_point_circuit(ctx, p);
    const auto n = ctx.config.n_qubits;
    const auto rho = run_circuit(program, DensityMatrix(n));
    const auto psi = run_ideal(program, basis_state(n));
    const double nu = static_cast<double>(program.gate_count());
    const double eta = std::exp(nu * std::log1p(-p.epsilon));
    const auto report = analyze(rho, psi, eta);

    ResultRow r;
    r.family = std::string(to_string(ctx.config.family));
    r.n_qubits = n;
    r.epsilon = p.epsilon;
    r.layers = p.layers;
    r.nu = program.gate_count();
    r.seed = p.seed;
    r.C_abs = report.commutator_norm_abs;
    r.F = report.fidelity;
    r.lambda1 = report.lambda1;
    r.trace_dist_wn = report.trace_dist_wn;
    r.eta_est = eta;
    if (p.epsilon == 0.0) {
        r.null_reason = "noiseless";
    } else if (!report.null_reason.empty()) {
        r.null_reason = report.null_reason;
    } else {
        r.W = report.uniformity;
        r.C_rel = report.commutator_norm_rel;
    }
    r.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

using RowSink = std::function<void(const ResultRow &)>;

/**
 * Runs every grid point, up to `config.threads` at a time, and hands rows to
 * `sink` in grid order as soon as each prefix is complete. The sink runs on
 * the calling thread only. The first failure stops the sweep and is
 * rethrown after the workers have joined.
 */
inline std::vector<ResultRow> run_sweep(const ExperimentConfig &config,
                                        const RowSink &sink = {}) {
    config.validate();
    check_resources(config);
    const SweepContext ctx(config);
    const auto points = sweep_points(config);

    std::vector<std::optional<ResultRow>> slots(points.size());
    std::mutex mu;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr error;

    const auto worker = [&] {
        while (!stop) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) {
                return;
            }
            try {
                auto row = evaluate_point(ctx, points[i]);
                std::lock_guard lock(mu);
                slots[i] = std::move(row);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error) {
                    error = std::current_exception();
                }
                stop = true;
            }
            ready.notify_all();
        }
    };

    const std::size_t n_workers =
        std::min<std::size_t>(std::max<std::size_t>(1, config.threads), points.size());
    std::vector<ResultRow> rows;
    rows.reserve(points.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < n_workers; ++t) {
            pool.emplace_back(worker);
        }
        for (std::size_t i = 0; i < points.size(); ++i) {
            std::unique_lock lock(mu);
            ready.wait(lock, [&] { return slots[i].has_value() || stop.load(); });
            if (!slots[i]) {
                break;
            }
            ResultRow row = std::move(*slots[i]);
            slots[i].reset();
            lock.unlock();
            if (sink) {
                sink(row);
            }
            rows.push_back(std::move(row));
        }
        stop = true;
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return rows;
}

/// Sweep that appends each row to `out` and flushes, so a crash loses at most
/// the rows still in flight.
inline std::vector<ResultRow> run_sweep_to_csv(const ExperimentConfig &config,
                                               std::ostream &out) {
    write_result_header(out);
    out.flush();
    return run_sweep(config, [&out](const ResultRow &r) {
        write_result_row(out, r);
        out.flush();
    });
}

struct GroupKey {
    std::string family;
    std::size_t n_qubits = 0;
    double epsilon = 0.0;

    friend auto operator<=>(const GroupKey &, const GroupKey &) = default;
};

inline std::map<GroupKey, std::vector<ResultRow>>
group_rows(const std::vector<ResultRow> &rows) {
    std::map<GroupKey, std::vector<ResultRow>> out;
    for (const auto &r : rows) {
        out[{r.family, r.n_qubits, r.epsilon}].push_back(r);
    }
    return out;
}

/// Seed statistics at one nu.
struct PointSummary {
    double nu = 0.0;
    double xi = 0.0;
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t count = 0;
    double fit_value = 0.0; ///< model evaluated at the fitted (alpha, beta)
    std::size_t layers = 0;
};

struct AggregateResult {
    GroupKey key;
    MetricKind metric = MetricKind::W;
    std::vector<PointSummary> points; ///< ascending in layer count
    ScalingFit fit;
};

inline std::optional<double> metric_value(const ResultRow &r, MetricKind m) {
    return m == MetricKind::W ? r.W : r.C_rel;
}

/**
 * Seed-mean per layer count for one (family, N, eps) group, then
 * fit_scaling on the means. Some families have a seed-dependent nu (the H0
 * ground-state preparation), so a point's nu is the mean over its rows.
 * Rows with a null metric are skipped.
 */
inline AggregateResult aggregate_and_fit(const std::vector<ResultRow> &rows,
                                         MetricKind metric) {
    if (rows.empty()) {
        fail(ErrorCode::Fit, "no rows to aggregate");
    }
    AggregateResult out;
    out.key = {rows.front().family, rows.front().n_qubits, rows.front().epsilon};
    out.metric = metric;
    struct Bucket {
        double nu_sum = 0.0;
        std::vector<double> values;
    };
    std::map<std::size_t, Bucket> by_layers;
    for (const auto &r : rows) {
        if (GroupKey{r.family, r.n_qubits, r.epsilon} != out.key) {
            fail(ErrorCode::Fit, "rows span several (family, N, epsilon) groups");
        }
        if (const auto v = metric_value(r, metric)) {
            auto &b = by_layers[r.layers];
            b.nu_sum += static_cast<double>(r.nu);
            b.values.push_back(*v);
        }
    }
    std::vector<ScalingSample> samples;
    for (const auto &[layers, bucket] : by_layers) {
        const auto &values = bucket.values;
        const auto k = static_cast<double>(values.size());
        double mean = 0.0;
        for (double v : values) {
            mean += v;
        }
        mean /= k;
        double ss = 0.0;
        for (double v : values) {
            ss += (v - mean) * (v - mean);
        }
        PointSummary p;
        p.layers = layers;
        p.nu = bucket.nu_sum / k;
        p.xi = out.key.epsilon * p.nu;
        p.mean = mean;
        p.count = values.size();
        p.stderr_ = values.size() > 1 ? std::sqrt(ss / (k - 1.0) / k) : 0.0;
        out.points.push_back(p);
        samples.push_back({p.nu, p.xi, mean, metric, out.key.n_qubits, p.count});
    }
    out.fit = fit_scaling(samples);
    for (auto &p : out.points) {
        p.fit_value = scaling_model(out.fit.alpha, out.fit.beta, p.nu, p.xi);
    }
    return out;
}

/// Plot data: nu, seed mean, standard error and the fitted curve.
inline void write_plot_data(std::ostream &out, const AggregateResult &a) {
    out << "# " << a.key.family << " N=" << a.key.n_qubits
        << " epsilon=" << format_double(a.key.epsilon) << " metric="
        << to_string(a.metric) << " alpha=" << format_double(a.fit.alpha)
        << " beta=" << format_double(a.fit.beta) << '\n';
    out << "nu,mean,stderr,fit\n";
    for (const auto &p : a.points) {
        out << format_double(p.nu) << ',' << format_double(p.mean) << ','
            << format_double(p.stderr_) << ',' << format_double(p.fit_value) << '\n';
    }
}

inline void write_fit_table_header(std::ostream &out) {
    out << "family,n_qubits,epsilon,metric,alpha,beta,residual,n_points\n";
}

inline void write_fit_table_row(std::ostream &out, const AggregateResult &a) {
    out << a.key.family << ',' << a.key.n_qubits << ','
        << format_double(a.key.epsilon) << ',' << to_string(a.metric) << ','
        << format_double(a.fit.alpha) << ',' << format_double(a.fit.beta) << ','
        << format_double(a.fit.residual) << ',' << a.points.size() << '\n';
}

} // namespace noisescramble
