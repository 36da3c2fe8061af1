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

#include "noisescramble/error.hpp"
#include "noisescramble/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace noisescramble {

enum class GateKind { RotationX, RotationY, RotationZ, Hadamard, CNOT, PauliExp };

inline std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::RotationX: return "RX";
    case GateKind::RotationY: return "RY";
    case GateKind::RotationZ: return "RZ";
    case GateKind::Hadamard: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::PauliExp: return "PEXP";
    }
    return "?";
}

/**
 * @brief One ideal gate of a circuit.
 *
 * Rotations follow R_P(angle) = exp(-i angle P / 2); Pauli exponentials are
 * exp(-i angle P) with no factor of one half. CNOT support is
 * {control, target}.
 */
struct Gate {
    GateKind kind = GateKind::Hadamard;
    std::vector<std::size_t> support;
    double angle = 0.0;
    PauliString pauli;

    static Gate rx(std::size_t q, double angle) {
        return {GateKind::RotationX, {q}, angle, {}};
    }
    static Gate ry(std::size_t q, double angle) {
        return {GateKind::RotationY, {q}, angle, {}};
    }
    static Gate rz(std::size_t q, double angle) {
        return {GateKind::RotationZ, {q}, angle, {}};
    }
    static Gate hadamard(std::size_t q) { return {GateKind::Hadamard, {q}, 0.0, {}}; }
    static Gate cnot(std::size_t control, std::size_t target) {
        return {GateKind::CNOT, {control, target}, 0.0, {}};
    }
    static Gate pauli_exp(PauliString p, double angle) {
        auto support = p.support();
        return {GateKind::PauliExp, std::move(support), angle, std::move(p)};
    }

    [[nodiscard]] std::size_t arity() const noexcept { return support.size(); }

    friend bool operator==(const Gate &, const Gate &) = default;
};

inline void validate_gate(const Gate &gate, std::size_t n_qubits) {
    if (gate.support.empty()) {
        fail(ErrorCode::InvalidGate, std::string(to_string(gate.kind)) +
                                         " gate has empty support");
    }
    const std::size_t expected_arity =
        gate.kind == GateKind::CNOT ? 2
        : gate.kind == GateKind::PauliExp ? gate.pauli.weight()
                                          : 1;
    if (gate.support.size() != expected_arity) {
        fail(ErrorCode::InvalidGate, std::string(to_string(gate.kind)) +
                                         " gate has wrong support size");
    }
    for (std::size_t i = 0; i < gate.support.size(); ++i) {
        if (gate.support[i] >= n_qubits) {
            fail(ErrorCode::InvalidGate,
                 "qubit index " + std::to_string(gate.support[i]) +
                     " out of range for " + std::to_string(n_qubits) +
                     " qubits");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (gate.support[i] == gate.support[j]) {
                fail(ErrorCode::InvalidGate, "repeated qubit in gate support");
            }
        }
    }
    if (!std::isfinite(gate.angle)) {
        fail(ErrorCode::InvalidGate, "non-finite gate angle");
    }
    if (gate.kind == GateKind::PauliExp) {
        if (gate.pauli.n_qubits() != n_qubits) {
            fail(ErrorCode::InvalidGate, "Pauli string length mismatch");
        }
        if (gate.support != gate.pauli.support()) {
            fail(ErrorCode::InvalidGate,
                 "Pauli exponential support disagrees with its string");
        }
    }
}

/**
 * How a single-qubit depolarising event is parametrised.
 *
 * Replacement: with probability p the qubit is replaced by Id/2, so one
 * quarter of the "error" events leave the state untouched.
 * Pauli: with probability p one of X, Y, Z (uniformly) is applied. This is
 * the replacement channel at p' = 4p/3 and requires p <= 3/4.
 */
enum class DepolarisingConvention { Replacement, Pauli };

inline std::string_view to_string(DepolarisingConvention c) {
    return c == DepolarisingConvention::Replacement ? "replacement" : "pauli";
}

inline DepolarisingConvention parse_depolarising_convention(std::string_view s) {
    if (s == "replacement") {
        return DepolarisingConvention::Replacement;
    }
    if (s == "pauli") {
        return DepolarisingConvention::Pauli;
    }
    fail(ErrorCode::Config, "unknown depolarising convention '" +
                                std::string(s) + "'");
}

/// Independent single-qubit depolarising on every support qubit after the
/// ideal gate, with the per-qubit rate chosen so that a q-qubit gate is
/// error-free with probability exactly 1 - per_gate_error.
struct NoiseSpec {
    double per_gate_error = 0.0;
    DepolarisingConvention convention = DepolarisingConvention::Replacement;

    void validate() const {
        if (!(per_gate_error >= 0.0 && per_gate_error <= 1.0)) {
            fail(ErrorCode::InvalidRate, "per-gate error " +
                                             std::to_string(per_gate_error) +
                                             " outside [0, 1]");
        }
        if (convention == DepolarisingConvention::Pauli &&
            per_qubit_rate(1) > 0.75) {
            fail(ErrorCode::InvalidRate,
                 "Pauli-convention per-qubit rate must not exceed 3/4");
        }
    }

    /// Per-qubit error probability for a gate acting on `arity` qubits:
    /// 1 - (1 - eps)^(1/q).
    [[nodiscard]] double per_qubit_rate(std::size_t arity) const {
        if (arity == 0) {
            return 0.0;
        }
        if (arity == 1) {
            return per_gate_error;
        }
        // -expm1(log1p(-eps)/q) keeps precision at eps ~ 1e-8.
        return -std::expm1(std::log1p(-per_gate_error) /
                           static_cast<double>(arity));
    }

    /// Parameter handed to the replacement-form depolarising channel.
    [[nodiscard]] double channel_rate(std::size_t arity) const {
        const double r = per_qubit_rate(arity);
        return convention == DepolarisingConvention::Pauli ? 4.0 * r / 3.0 : r;
    }

    friend bool operator==(const NoiseSpec &, const NoiseSpec &) = default;
};

struct CircuitProgram {
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;
    NoiseSpec noise;

    /// nu: every gate counts once.
    [[nodiscard]] std::size_t gate_count() const noexcept { return gates.size(); }

    void validate() const {
        noise.validate();
        for (const auto &g : gates) {
            validate_gate(g, n_qubits);
        }
    }

    friend bool operator==(const CircuitProgram &,
                           const CircuitProgram &) = default;
};

} // namespace noisescramble
