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
#include "noisescramble/circuit.hpp"
#include "noisescramble/error.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace noisescramble {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr double kDefaultEpsilonProxyW = 1e-8;
inline constexpr double kDefaultEpsilonProxyC = 1e-7;

enum class MetricSelection { W, C, Both };

inline MetricSelection parse_metric_selection(std::string_view s) {
    if (s == "W") {
        return MetricSelection::W;
    }
    if (s == "C") {
        return MetricSelection::C;
    }
    if (s == "both") {
        return MetricSelection::Both;
    }
    fail(ErrorCode::Config, "metric must be W, C or both, got '" +
                                std::string(s) + "'");
}

inline std::string_view to_string(MetricSelection m) {
    switch (m) {
    case MetricSelection::W: return "W";
    case MetricSelection::C: return "C";
    case MetricSelection::Both: return "both";
    }
    return "both";
}

/**
 * One sweep: a family at fixed N over an epsilon grid, a layer grid and a
 * list of seed labels. When `epsilons` is empty the grid falls back to the
 * vanishing-noise proxies selected by `metric`.
 */
struct ExperimentConfig {
    AnsatzFamily family = AnsatzFamily::SEL;
    std::size_t n_qubits = 2;
    std::vector<double> epsilons;
    std::vector<std::size_t> layers;
    ParameterMode parameter_mode = ParameterMode::Random;
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::uint64_t base_seed = 0;
    std::optional<std::filesystem::path> hamiltonian_file;
    std::size_t sparse_terms_per_layer = 100;
    DepolarisingConvention convention = DepolarisingConvention::Replacement;
    MetricSelection metric = MetricSelection::Both;
    double epsilon_proxy_w = kDefaultEpsilonProxyW;
    double epsilon_proxy_c = kDefaultEpsilonProxyC;
    std::filesystem::path output = "results.csv";
    std::size_t threads = 1;
    std::size_t memory_limit_bytes = std::size_t{4} << 30U;

    /// The epsilon grid actually swept.
    [[nodiscard]] std::vector<double> epsilon_grid() const {
        if (!epsilons.empty()) {
            return epsilons;
        }
        switch (metric) {
        case MetricSelection::W: return {epsilon_proxy_w};
        case MetricSelection::C: return {epsilon_proxy_c};
        case MetricSelection::Both:
            if (epsilon_proxy_w == epsilon_proxy_c) {
                return {epsilon_proxy_w};
            }
            return {epsilon_proxy_w, epsilon_proxy_c};
        }
        return {epsilon_proxy_w};
    }

    void validate() const {
        if (n_qubits < 1) {
            fail(ErrorCode::Config, "n_qubits must be positive");
        }
        if (layers.empty()) {
            fail(ErrorCode::Config, "layer grid is empty");
        }
        for (auto l : layers) {
            if (l < 1) {
                fail(ErrorCode::Config, "layer counts must be positive");
            }
        }
        if (seeds.empty()) {
            fail(ErrorCode::Config, "seed list is empty");
        }
        if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() !=
            seeds.size()) {
            fail(ErrorCode::Config, "seeds must be distinct");
        }
        for (double e : epsilon_grid()) {
            NoiseSpec{e, convention}.validate();
        }
        if (threads < 1) {
            fail(ErrorCode::Config, "threads must be at least 1");
        }
        if (sparse_terms_per_layer < 1) {
            fail(ErrorCode::Config, "sparse_terms_per_layer must be positive");
        }
        if (family == AnsatzFamily::HvaSparse && !hamiltonian_file) {
            fail(ErrorCode::Config, "HVA-SPARSE needs hamiltonian_file");
        }
    }
};

namespace detail {

template <typename T>
T json_get(const nlohmann::json &j, const char *key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::Config, std::string("field '") + key + "': " + e.what());
    }
}

} // namespace detail

/**
 * Parses a versioned JSON config. Unknown keys are rejected so that typos do
 * not silently fall back to defaults. A relative `hamiltonian_file` is
 * resolved against `base_dir`.
 */
inline ExperimentConfig
parse_experiment_config(const std::string &text,
                        const std::filesystem::path &base_dir = {}) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        fail(ErrorCode::Parse, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        fail(ErrorCode::Config, "config must be a JSON object");
    }
    static const std::set<std::string> known{
        "schema_version",  "family",          "n_qubits",
        "epsilons",        "layers",          "parameter_mode",
        "seeds",           "base_seed",       "hamiltonian_file",
        "sparse_terms_per_layer", "depolarising_convention", "metric",
        "epsilon_proxy_w", "epsilon_proxy_c", "output",
        "threads",         "memory_limit_bytes"};
    for (const auto &item : j.items()) {
        if (!known.contains(item.key())) {
            fail(ErrorCode::Config, "unknown config field '" + item.key() + "'");
        }
    }
    if (!j.contains("schema_version")) {
        fail(ErrorCode::Config, "config has no schema_version");
    }
    const int version = detail::json_get<int>(j, "schema_version");
    if (version != kConfigSchemaVersion) {
        fail(ErrorCode::Config, "unsupported config schema_version " +
                                    std::to_string(version));
    }
    ExperimentConfig c;
    c.family = parse_ansatz_family(detail::json_get<std::string>(j, "family"));
    c.n_qubits = detail::json_get<std::size_t>(j, "n_qubits");
    c.layers = detail::json_get<std::vector<std::size_t>>(j, "layers");
    if (j.contains("epsilons")) {
        c.epsilons = detail::json_get<std::vector<double>>(j, "epsilons");
    }
    if (j.contains("parameter_mode")) {
        c.parameter_mode = parse_parameter_mode(
            detail::json_get<std::string>(j, "parameter_mode"));
    }
    if (j.contains("seeds")) {
        const auto &s = j.at("seeds");
        if (s.is_number_unsigned()) {
            c.seeds.clear();
            for (std::uint64_t k = 0; k < s.get<std::uint64_t>(); ++k) {
                c.seeds.push_back(k);
            }
        } else {
            c.seeds = detail::json_get<std::vector<std::uint64_t>>(j, "seeds");
        }
    }
    if (j.contains("base_seed")) {
        c.base_seed = detail::json_get<std::uint64_t>(j, "base_seed");
    }
    if (j.contains("hamiltonian_file")) {
        std::filesystem::path p = detail::json_get<std::string>(j, "hamiltonian_file");
        c.hamiltonian_file = p.is_relative() ? base_dir / p : p;
    }
    if (j.contains("sparse_terms_per_layer")) {
        c.sparse_terms_per_layer =
            detail::json_get<std::size_t>(j, "sparse_terms_per_layer");
    }
    if (j.contains("depolarising_convention")) {
        c.convention = parse_depolarising_convention(
            detail::json_get<std::string>(j, "depolarising_convention"));
    }
    if (j.contains("metric")) {
        c.metric = parse_metric_selection(detail::json_get<std::string>(j, "metric"));
    }
    if (j.contains("epsilon_proxy_w")) {
        c.epsilon_proxy_w = detail::json_get<double>(j, "epsilon_proxy_w");
    }
    if (j.contains("epsilon_proxy_c")) {
        c.epsilon_proxy_c = detail::json_get<double>(j, "epsilon_proxy_c");
    }
    if (j.contains("output")) {
        c.output = detail::json_get<std::string>(j, "output");
    }
    if (j.contains("threads")) {
        c.threads = detail::json_get<std::size_t>(j, "threads");
    }
    if (j.contains("memory_limit_bytes")) {
        c.memory_limit_bytes = detail::json_get<std::size_t>(j, "memory_limit_bytes");
    }
    c.validate();
    return c;
}

inline ExperimentConfig load_experiment_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open config " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str(), path.parent_path());
}

} // namespace noisescramble
