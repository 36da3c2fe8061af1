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
#include "noisescramble/density_matrix.hpp"
#include "noisescramble/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace noisescramble {

/// Gates applied between two re-symmetrisations of the density matrix.
inline constexpr std::size_t kSymmetrizeInterval = 100;

namespace kernels {

using Mat2 = std::array<Complex, 4>; // row-major 2x2

inline std::uint64_t bit_of(std::size_t n_qubits, std::size_t qubit) {
    return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

inline Mat2 single_qubit_matrix(const Gate &g) {
    using namespace std::complex_literals;
    const double c = std::cos(g.angle / 2.0);
    const double s = std::sin(g.angle / 2.0);
    switch (g.kind) {
    case GateKind::RotationX: return {c, -1i * s, -1i * s, c};
    case GateKind::RotationY: return {c, -s, s, c};
    case GateKind::RotationZ:
        return {std::polar(1.0, -g.angle / 2.0), 0.0, 0.0,
                std::polar(1.0, g.angle / 2.0)};
    case GateKind::Hadamard: {
        const double h = 1.0 / std::sqrt(2.0);
        return {h, h, h, -h};
    }
    default: break;
    }
    fail(ErrorCode::InvalidGate, "not a single-qubit matrix gate");
}

/// rows <- U rows, on a row-major buffer of `dim` rows and `ncols` columns.
inline void left_single(Complex *data, std::size_t dim, std::size_t ncols,
                        std::uint64_t bit, const Mat2 &u) {
    for (std::size_t r = 0; r < dim; ++r) {
        if ((r & bit) != 0U) {
            continue;
        }
        Complex *r0 = data + r * ncols;
        Complex *r1 = data + (r | bit) * ncols;
        for (std::size_t c = 0; c < ncols; ++c) {
            const Complex a = r0[c];
            const Complex b = r1[c];
            r0[c] = u[0] * a + u[1] * b;
            r1[c] = u[2] * a + u[3] * b;
        }
    }
}

/// M <- M U^dagger for a square row-major buffer.
inline void right_single_adjoint(Complex *data, std::size_t dim,
                                 std::uint64_t bit, const Mat2 &u) {
    const Complex c00 = std::conj(u[0]);
    const Complex c01 = std::conj(u[1]);
    const Complex c10 = std::conj(u[2]);
    const Complex c11 = std::conj(u[3]);
    for (std::size_t r = 0; r < dim; ++r) {
        Complex *row = data + r * dim;
        for (std::size_t c = 0; c < dim; ++c) {
            if ((c & bit) != 0U) {
                continue;
            }
            const Complex a = row[c];
            const Complex b = row[c | bit];
            row[c] = a * c00 + b * c01;
            row[c | bit] = a * c10 + b * c11;
        }
    }
}

inline void left_cnot(Complex *data, std::size_t dim, std::size_t ncols,
                      std::uint64_t control, std::uint64_t target) {
    for (std::size_t r = 0; r < dim; ++r) {
        if ((r & control) != 0U && (r & target) == 0U) {
            std::swap_ranges(data + r * ncols, data + (r + 1) * ncols,
                             data + (r | target) * ncols);
        }
    }
}

inline void right_cnot(Complex *data, std::size_t dim, std::uint64_t control,
                       std::uint64_t target) {
    for (std::size_t r = 0; r < dim; ++r) {
        Complex *row = data + r * dim;
        for (std::size_t c = 0; c < dim; ++c) {
            if ((c & control) != 0U && (c & target) == 0U) {
                std::swap(row[c], row[c | target]);
            }
        }
    }
}

/// Phase picked up by basis state |x> under P: P|x> = phase(x) |x ^ xmask>.
inline std::vector<Complex> pauli_phases(const PauliString &p, std::size_t dim) {
    using namespace std::complex_literals;
    static constexpr std::array<Complex, 4> i_pow{1.0, 1i, -1.0, -1i};
    const Complex base = i_pow[p.y_count() % 4];
    const std::uint64_t zmask = p.z_mask();
    std::vector<Complex> out(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        out[x] = (std::popcount(x & zmask) % 2 == 0) ? base : -base;
    }
    return out;
}

/// Entries of E = exp(-i angle P) = cos(angle) I - i sin(angle) P.
struct PauliExpTable {
    std::uint64_t xmask = 0;
    Complex diag;                // E_{x,x} when xmask != 0
    std::vector<Complex> offdiag; // E_{x ^ xmask, x} indexed by source x
    std::vector<Complex> diagonal; // E_{x,x} when xmask == 0
};

inline PauliExpTable pauli_exp_table(const PauliString &p, double angle,
                                     std::size_t dim) {
    using namespace std::complex_literals;
    PauliExpTable t;
    t.xmask = p.x_mask();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    auto phases = pauli_phases(p, dim);
    if (t.xmask == 0U) {
        t.diagonal.resize(dim);
        for (std::size_t x = 0; x < dim; ++x) {
            t.diagonal[x] = c - 1i * s * phases[x];
        }
    } else {
        t.diag = c;
        t.offdiag.resize(dim);
        for (std::size_t x = 0; x < dim; ++x) {
            t.offdiag[x] = -1i * s * phases[x];
        }
    }
    return t;
}

inline void left_pauli_exp(Complex *data, std::size_t dim, std::size_t ncols,
                           const PauliExpTable &t) {
    if (t.xmask == 0U) {
        for (std::size_t r = 0; r < dim; ++r) {
            Complex *row = data + r * ncols;
            const Complex e = t.diagonal[r];
            for (std::size_t c = 0; c < ncols; ++c) {
                row[c] *= e;
            }
        }
        return;
    }
    for (std::size_t a = 0; a < dim; ++a) {
        const std::size_t b = a ^ t.xmask;
        if (b < a) {
            continue;
        }
        Complex *ra = data + a * ncols;
        Complex *rb = data + b * ncols;
        const Complex e_ab = t.offdiag[b]; // E_{a,b}: source b lands on a
        const Complex e_ba = t.offdiag[a];
        for (std::size_t c = 0; c < ncols; ++c) {
            const Complex va = ra[c];
            const Complex vb = rb[c];
            ra[c] = t.diag * va + e_ab * vb;
            rb[c] = t.diag * vb + e_ba * va;
        }
    }
}

inline void right_pauli_exp_adjoint(Complex *data, std::size_t dim,
                                    const PauliExpTable &t) {
    if (t.xmask == 0U) {
        std::vector<Complex> conj_diag(dim);
        for (std::size_t x = 0; x < dim; ++x) {
            conj_diag[x] = std::conj(t.diagonal[x]);
        }
        for (std::size_t r = 0; r < dim; ++r) {
            Complex *row = data + r * dim;
            for (std::size_t c = 0; c < dim; ++c) {
                row[c] *= conj_diag[c];
            }
        }
        return;
    }
    const Complex cdiag = std::conj(t.diag);
    std::vector<Complex> conj_off(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        conj_off[x] = std::conj(t.offdiag[x]);
    }
    for (std::size_t r = 0; r < dim; ++r) {
        Complex *row = data + r * dim;
        for (std::size_t a = 0; a < dim; ++a) {
            const std::size_t b = a ^ t.xmask;
            if (b < a) {
                continue;
            }
            const Complex va = row[a];
            const Complex vb = row[b];
            // (M E^dagger)_{r,a} = sum_y M_{r,y} conj(E_{a,y})
            row[a] = va * cdiag + vb * conj_off[b];
            row[b] = vb * cdiag + va * conj_off[a];
        }
    }
}

/// Applies the gate's unitary from the left to a buffer of `ncols` columns.
inline void apply_left(Complex *data, std::size_t n_qubits, std::size_t ncols,
                       const Gate &g) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    switch (g.kind) {
    case GateKind::CNOT:
        left_cnot(data, dim, ncols, bit_of(n_qubits, g.support[0]),
                  bit_of(n_qubits, g.support[1]));
        return;
    case GateKind::PauliExp:
        left_pauli_exp(data, dim, ncols, pauli_exp_table(g.pauli, g.angle, dim));
        return;
    default:
        left_single(data, dim, ncols, bit_of(n_qubits, g.support[0]),
                    single_qubit_matrix(g));
    }
}

inline void apply_conjugation(Complex *data, std::size_t n_qubits,
                              const Gate &g) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    switch (g.kind) {
    case GateKind::CNOT: {
        const auto c = bit_of(n_qubits, g.support[0]);
        const auto t = bit_of(n_qubits, g.support[1]);
        left_cnot(data, dim, dim, c, t);
        right_cnot(data, dim, c, t);
        return;
    }
    case GateKind::PauliExp: {
        const auto table = pauli_exp_table(g.pauli, g.angle, dim);
        left_pauli_exp(data, dim, dim, table);
        right_pauli_exp_adjoint(data, dim, table);
        return;
    }
    default: {
        const auto bit = bit_of(n_qubits, g.support[0]);
        const auto u = single_qubit_matrix(g);
        left_single(data, dim, dim, bit, u);
        right_single_adjoint(data, dim, bit, u);
    }
    }
}

/// (1-p) rho + p (tr_q rho) (x) Id/2, in place.
inline void depolarise(Complex *data, std::size_t dim, std::uint64_t bit,
                       double p) {
    const double keep = 1.0 - p;
    const double half_p = 0.5 * p;
    for (std::size_t a = 0; a < dim; ++a) {
        if ((a & bit) != 0U) {
            continue;
        }
        Complex *r0 = data + a * dim;
        Complex *r1 = data + (a | bit) * dim;
        for (std::size_t b = 0; b < dim; ++b) {
            if ((b & bit) != 0U) {
                continue;
            }
            const std::size_t b1 = b | bit;
            const Complex mixed = half_p * (r0[b] + r1[b1]);
            r0[b] = keep * r0[b] + mixed;
            r1[b1] = keep * r1[b1] + mixed;
            r0[b1] *= keep;
            r1[b] *= keep;
        }
    }
}

} // namespace kernels

/// rho <- U rho U^dagger.
inline void apply_unitary_inplace(DensityMatrix &state, const Gate &gate) {
    validate_gate(gate, state.n_qubits());
    kernels::apply_conjugation(state.matrix().data(), state.n_qubits(), gate);
}

inline DensityMatrix apply_unitary(DensityMatrix state, const Gate &gate) {
    apply_unitary_inplace(state, gate);
    return state;
}

inline void apply_depolarising_inplace(DensityMatrix &state, std::size_t qubit,
                                       double rate) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        fail(ErrorCode::InvalidRate,
             "depolarising rate " + std::to_string(rate) + " outside [0, 1]");
    }
    if (qubit >= state.n_qubits()) {
        fail(ErrorCode::InvalidGate, "depolarising qubit out of range");
    }
    if (rate == 0.0) {
        return;
    }
    kernels::depolarise(state.matrix().data(), state.dim(),
                        kernels::bit_of(state.n_qubits(), qubit), rate);
}

/// Single-qubit depolarising channel (1-p) rho + p (tr_q rho) (x) Id/2.
inline DensityMatrix apply_depolarising(DensityMatrix state, std::size_t qubit,
                                        double rate) {
    apply_depolarising_inplace(state, qubit, rate);
    return state;
}

/// Applies every gate followed by independent depolarising on each support
/// qubit. Hermiticity is restored every kSymmetrizeInterval gates and at the
/// end of the circuit.
inline DensityMatrix run_circuit(const CircuitProgram &program,
                                 DensityMatrix state) {
    if (state.n_qubits() != program.n_qubits) {
        fail(ErrorCode::Shape, "program has " +
                                   std::to_string(program.n_qubits) +
                                   " qubits, state has " +
                                   std::to_string(state.n_qubits()));
    }
    program.validate();
    const std::size_t n = program.n_qubits;
    const std::size_t dim = state.dim();
    Complex *data = state.matrix().data();
    std::size_t since_symmetrize = 0;
    for (const auto &gate : program.gates) {
        kernels::apply_conjugation(data, n, gate);
        const double p = program.noise.channel_rate(gate.arity());
        if (p > 0.0) {
            for (auto q : gate.support) {
                kernels::depolarise(data, dim, kernels::bit_of(n, q), p);
            }
        }
        if (++since_symmetrize == kSymmetrizeInterval) {
            state.symmetrize();
            data = state.matrix().data();
            since_symmetrize = 0;
        }
    }
    state.symmetrize();
    return state;
}

/// Noise-free state-vector evolution.
inline StateVector run_ideal(const CircuitProgram &program,
                             StateVector psi) {
    const auto d = static_cast<std::size_t>(psi.size());
    if (program.n_qubits == 0 || d != (std::size_t{1} << program.n_qubits)) {
        fail(ErrorCode::Shape, "state vector length " + std::to_string(d) +
                                   " does not match " +
                                   std::to_string(program.n_qubits) +
                                   " qubits");
    }
    for (const auto &g : program.gates) {
        validate_gate(g, program.n_qubits);
    }
    for (const auto &gate : program.gates) {
        kernels::apply_left(psi.data(), program.n_qubits, 1, gate);
    }
    psi.normalize();
    return psi;
}

/// Ideal output from the pure initial state |psi>.
inline StateVector run_ideal(const CircuitProgram &program,
                             const DensityMatrix &initial) {
    if (initial.n_qubits() != program.n_qubits) {
        fail(ErrorCode::Shape, "program/state qubit mismatch");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(initial.matrix());
    const auto last = es.eigenvalues().size() - 1;
    if (std::abs(es.eigenvalues()(last) - 1.0) > 1e-10) {
        fail(ErrorCode::InvalidState, "initial state for run_ideal is not pure");
    }
    return run_ideal(program, StateVector(es.eigenvectors().col(last)));
}

} // namespace noisescramble
