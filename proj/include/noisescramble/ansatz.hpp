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

#include "noisescramble/circuit.hpp"
#include "noisescramble/error.hpp"
#include "noisescramble/hamiltonians.hpp"
#include "noisescramble/pauli.hpp"
#include "noisescramble/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noisescramble {

enum class AnsatzFamily { SEL, HvaXxx, HvaTfi, HvaTfiRz, HvaSparse };
enum class ParameterMode { Random, Vqe };

inline std::string_view to_string(AnsatzFamily f) {
    switch (f) {
    case AnsatzFamily::SEL: return "SEL";
    case AnsatzFamily::HvaXxx: return "HVA-XXX";
    case AnsatzFamily::HvaTfi: return "HVA-TFI";
    case AnsatzFamily::HvaTfiRz: return "HVA-TFI-RZ";
    case AnsatzFamily::HvaSparse: return "HVA-SPARSE";
    }
    return "?";
}

inline AnsatzFamily parse_ansatz_family(std::string_view s) {
    for (auto f : {AnsatzFamily::SEL, AnsatzFamily::HvaXxx, AnsatzFamily::HvaTfi,
                   AnsatzFamily::HvaTfiRz, AnsatzFamily::HvaSparse}) {
        if (s == to_string(f)) {
            return f;
        }
    }
    fail(ErrorCode::Config, "unknown ansatz family '" + std::string(s) + "'");
}

inline std::string_view to_string(ParameterMode m) {
    return m == ParameterMode::Random ? "random" : "vqe";
}

inline ParameterMode parse_parameter_mode(std::string_view s) {
    if (s == "random") {
        return ParameterMode::Random;
    }
    if (s == "vqe") {
        return ParameterMode::Vqe;
    }
    fail(ErrorCode::Config, "unknown parameter mode '" + std::string(s) + "'");
}

struct AnsatzSpec {
    AnsatzFamily family = AnsatzFamily::SEL;
    std::size_t n_qubits = 2;
    std::size_t n_layers = 1;
    ParameterMode parameter_mode = ParameterMode::Random;
    std::uint64_t seed = 0;
    std::size_t sparse_terms_per_layer = 100;

    void validate() const {
        if (n_layers < 1) {
            fail(ErrorCode::InvalidSize, "ansatz needs at least one layer");
        }
        if (sparse_terms_per_layer < 1) {
            fail(ErrorCode::InvalidSize,
                 "sparse layers need at least one sampled term");
        }
        (void)dimension_of(n_qubits);
    }
};

/// Random circuit angles are uniform on [-2 pi, 2 pi].
inline double random_angle(Rng &rng) {
    return rng.uniform(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
}

/**
 * Strongly entangling layers: per layer R_z, R_y, R_z on every qubit followed
 * by a CNOT ring i -> (i+1) mod N. nu = L (3N + N).
 */
inline CircuitProgram build_sel_circuit(const AnsatzSpec &spec) {
    spec.validate();
    if (spec.family != AnsatzFamily::SEL) {
        fail(ErrorCode::Config, "build_sel_circuit needs family SEL");
    }
    const std::size_t n = spec.n_qubits;
    if (n < 2) {
        fail(ErrorCode::InvalidSize, "SEL needs at least 2 qubits for its CNOT ring");
    }
    Rng rng(spec.seed);
    CircuitProgram prog;
    prog.n_qubits = n;
    prog.gates.reserve(spec.n_layers * 4 * n);
    for (std::size_t layer = 0; layer < spec.n_layers; ++layer) {
        for (std::size_t q = 0; q < n; ++q) {
            prog.gates.push_back(Gate::rz(q, random_angle(rng)));
            prog.gates.push_back(Gate::ry(q, random_angle(rng)));
            prog.gates.push_back(Gate::rz(q, random_angle(rng)));
        }
        for (std::size_t q = 0; q < n; ++q) {
            prog.gates.push_back(Gate::cnot(q, (q + 1) % n));
        }
    }
    return prog;
}

struct SparseLayerOptions {
    ParameterMode mode = ParameterMode::Random;
    /// Evolution time of the layer (gamma_k) used in vqe mode.
    double layer_angle = 0.0;
};

/**
 * Samples `k_terms` strings of H1 with replacement, p_k proportional to
 * |h_k|, and emits one Pauli exponential per sample.
 *
 * In vqe mode every sample gets angle gamma * lambda / k * sign(h_k) with
 * lambda = sum_k |h_k|, so the product is an unbiased compilation of
 * exp(-i gamma H1). In random mode each sample gets an independent angle.
 */
inline std::vector<Gate> build_sparse_hva_layer(const PauliTermHamiltonian &h1,
                                                std::size_t k_terms,
                                                std::uint64_t seed,
                                                SparseLayerOptions options = {}) {
    if (h1.empty()) {
        fail(ErrorCode::InvalidDistribution, "sparse layer needs a nonempty H1");
    }
    if (k_terms < 1) {
        fail(ErrorCode::InvalidSize, "sparse layer needs k_terms >= 1");
    }
    std::vector<double> cumulative;
    cumulative.reserve(h1.size());
    double total = 0.0;
    for (const auto &t : h1.terms()) {
        total += std::abs(t.coefficient);
        cumulative.push_back(total);
    }
    if (!(total > 0.0)) {
        fail(ErrorCode::InvalidDistribution,
             "all H1 coefficients are zero; cannot sample");
    }
    Rng rng(seed);
    std::vector<Gate> gates;
    gates.reserve(k_terms);
    for (std::size_t j = 0; j < k_terms; ++j) {
        const double u = rng.uniform01() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) {
            --it;
        }
        // upper_bound never lands on a zero-weight term: its cumulative value
        // equals its predecessor's.
        const auto &term =
            h1.terms()[static_cast<std::size_t>(it - cumulative.begin())];
        const double angle =
            options.mode == ParameterMode::Vqe
                ? options.layer_angle * total / static_cast<double>(k_terms) *
                      (term.coefficient < 0.0 ? -1.0 : 1.0)
                : random_angle(rng);
        gates.push_back(Gate::pauli_exp(term.string, angle));
    }
    return gates;
}

namespace detail {

/// Gates taking |0...0> to a ground state of H0. Handles diagonal H0
/// (brute-force minimum over basis states, prepared with R_x(pi)) and pure
/// single-qubit X fields (|+> or |->, prepared with Hadamards).
inline std::vector<Gate> ground_state_preparation(const PauliTermHamiltonian &h0) {
    const std::size_t n = h0.n_qubits();
    std::vector<Gate> gates;
    const bool x_field = std::all_of(
        h0.terms().begin(), h0.terms().end(), [](const PauliTerm &t) {
            return t.string.weight() == 1 &&
                   t.string[t.string.support().front()] == 'X';
        });
    if (!h0.empty() && x_field) {
        std::vector<double> field(n, 0.0);
        for (const auto &t : h0.terms()) {
            field[t.string.support().front()] += t.coefficient;
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (field[q] < 0.0) {
                gates.push_back(Gate::hadamard(q));
            } else if (field[q] > 0.0) {
                gates.push_back(Gate::rx(q, std::numbers::pi));
                gates.push_back(Gate::hadamard(q));
            }
        }
        return gates;
    }
    for (const auto &t : h0.terms()) {
        if (!t.string.is_diagonal()) {
            fail(ErrorCode::Domain,
                 "cannot prepare the ground state of H0 containing '" +
                     t.string.str() + "'");
        }
    }
    const std::size_t d = std::size_t{1} << n;
    std::uint64_t best = 0;
    double best_energy = std::numeric_limits<double>::infinity();
    for (std::uint64_t x = 0; x < d; ++x) {
        double e = 0.0;
        for (const auto &t : h0.terms()) {
            e += (std::popcount(x & t.string.z_mask()) % 2 == 0)
                     ? t.coefficient
                     : -t.coefficient;
        }
        if (e < best_energy - 1e-14) {
            best_energy = e;
            best = x;
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        if ((best >> (n - 1 - q)) & 1U) {
            gates.push_back(Gate::rx(q, std::numbers::pi));
        }
    }
    return gates;
}

inline void append_trotter_step(std::vector<Gate> &gates,
                                const PauliTermHamiltonian &h, double time,
                                ParameterMode mode, Rng &rng) {
    for (const auto &t : h.terms()) {
        if (t.string.is_identity()) {
            continue; // global phase
        }
        const double angle =
            mode == ParameterMode::Vqe ? time * t.coefficient : random_angle(rng);
        gates.push_back(Gate::pauli_exp(t.string, angle));
    }
}

} // namespace detail

/**
 * Hamiltonian variational ansatz. Starts from the ground state of H0, then
 * layer k = 1..L applies exp(-i beta_k H0) and exp(-i gamma_k H1), each
 * trotterised term by term in canonical order. In vqe mode
 * gamma_k = k/L and beta_k = 1 - k/L; in random mode every Pauli exponential
 * gets its own angle. HVA-TFI-RZ appends a random R_z per qubit per layer;
 * HVA-SPARSE replaces the H1 step by a sampled sparse layer.
 */
inline CircuitProgram build_hva_circuit(const AnsatzSpec &spec,
                                        const PauliTermHamiltonian &h0,
                                        const PauliTermHamiltonian &h1) {
    spec.validate();
    if (spec.family == AnsatzFamily::SEL) {
        fail(ErrorCode::Config, "build_hva_circuit needs an HVA family");
    }
    if (h1.empty()) {
        fail(ErrorCode::InvalidSize, "HVA needs a nonempty H1");
    }
    if (h0.n_qubits() != spec.n_qubits || h1.n_qubits() != spec.n_qubits) {
        fail(ErrorCode::Shape, "Hamiltonian qubit count does not match the ansatz");
    }
    const std::size_t n = spec.n_qubits;
    const auto layers = static_cast<double>(spec.n_layers);
    Rng rng(spec.seed);
    CircuitProgram prog;
    prog.n_qubits = n;
    prog.gates = detail::ground_state_preparation(h0);
    for (std::size_t k = 1; k <= spec.n_layers; ++k) {
        const double gamma = static_cast<double>(k) / layers;
        const double beta = 1.0 - gamma;
        detail::append_trotter_step(prog.gates, h0, beta, spec.parameter_mode, rng);
        if (spec.family == AnsatzFamily::HvaSparse) {
            const auto layer_seed = SeedHasher(spec.seed).mix(std::uint64_t{k}).value();
            auto sparse = build_sparse_hva_layer(
                h1, spec.sparse_terms_per_layer, layer_seed,
                {spec.parameter_mode, gamma});
            prog.gates.insert(prog.gates.end(), sparse.begin(), sparse.end());
        } else {
            detail::append_trotter_step(prog.gates, h1, gamma,
                                        spec.parameter_mode, rng);
        }
        if (spec.family == AnsatzFamily::HvaTfiRz) {
            for (std::size_t q = 0; q < n; ++q) {
                prog.gates.push_back(Gate::rz(q, random_angle(rng)));
            }
        }
    }
    return prog;
}

/// A circuit together with the Hamiltonian it was built from (empty for SEL).
struct AnsatzInstance {
    CircuitProgram program;
    HamiltonianPair hamiltonian;
};

/**
 * Builds any family. Model Hamiltonians draw their random couplings from
 * `hamiltonian_seed`; HVA-SPARSE requires `file_hamiltonian`, split into
 * diagonal (H0) and off-diagonal (H1) parts.
 */
inline AnsatzInstance
build_ansatz(const AnsatzSpec &spec, std::uint64_t hamiltonian_seed,
             const std::optional<PauliTermHamiltonian> &file_hamiltonian = {}) {
    AnsatzInstance out;
    switch (spec.family) {
    case AnsatzFamily::SEL:
        out.program = build_sel_circuit(spec);
        return out;
    case AnsatzFamily::HvaXxx:
        out.hamiltonian = build_xxx_hamiltonian(spec.n_qubits, hamiltonian_seed);
        break;
    case AnsatzFamily::HvaTfi:
    case AnsatzFamily::HvaTfiRz:
        out.hamiltonian =
            build_tfi_hamiltonian(spec.n_qubits, hamiltonian_seed,
                                  spec.family == AnsatzFamily::HvaTfiRz);
        break;
    case AnsatzFamily::HvaSparse:
        if (!file_hamiltonian) {
            fail(ErrorCode::Config, "HVA-SPARSE needs a Hamiltonian file");
        }
        if (file_hamiltonian->empty()) {
            fail(ErrorCode::InvalidSize, "Hamiltonian file has no terms");
        }
        out.hamiltonian = split_diagonal(*file_hamiltonian);
        break;
    }
    out.program = build_hva_circuit(spec, out.hamiltonian.h0, out.hamiltonian.h1);
    return out;
}

} // namespace noisescramble
