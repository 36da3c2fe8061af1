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

#include "noisescramble/density_matrix.hpp"
#include "noisescramble/error.hpp"
#include "noisescramble/pauli.hpp"
#include "noisescramble/random.hpp"
#include "noisescramble/simulator.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace noisescramble {

/// Split Hamiltonian H = H0 + H1 used to build alternating-evolution ansatze.
struct HamiltonianPair {
    PauliTermHamiltonian h0;
    PauliTermHamiltonian h1;
    /// Downstream circuits append a parametrised R_z per qubit per layer.
    bool with_rz_extension = false;
};

inline void require_chain(std::size_t n_qubits) {
    if (n_qubits < 2) {
        fail(ErrorCode::InvalidSize,
             "spin chain needs at least 2 qubits, got " +
                 std::to_string(n_qubits));
    }
    (void)dimension_of(n_qubits);
}

/// Heisenberg XXX chain: H0 = sum_k D_k Z_k with D_k ~ U[-1, 1],
/// H1 = sum_k (XX + YY + ZZ)_{k,k+1} on an open chain.
inline HamiltonianPair build_xxx_hamiltonian(std::size_t n_qubits,
                                             std::uint64_t seed) {
    require_chain(n_qubits);
    Rng rng(seed);
    HamiltonianPair out{PauliTermHamiltonian(n_qubits),
                        PauliTermHamiltonian(n_qubits), false};
    for (std::size_t k = 0; k < n_qubits; ++k) {
        out.h0.add(rng.uniform(-1.0, 1.0), PauliString::single(n_qubits, k, 'Z'));
    }
    for (std::size_t k = 0; k + 1 < n_qubits; ++k) {
        for (char op : {'X', 'Y', 'Z'}) {
            std::string s(n_qubits, 'I');
            s[k] = op;
            s[k + 1] = op;
            out.h1.add(1.0, PauliString(std::move(s)));
        }
    }
    out.h0.canonicalize();
    out.h1.canonicalize();
    return out;
}

/// Transverse-field Ising chain: H0 = -sum_i X_i, H1 = -sum_i J_i Z_i Z_{i+1}
/// with J_i ~ U[-1, 1] on an open chain.
inline HamiltonianPair build_tfi_hamiltonian(std::size_t n_qubits,
                                             std::uint64_t seed,
                                             bool with_rz_extension) {
    require_chain(n_qubits);
    Rng rng(seed);
    HamiltonianPair out{PauliTermHamiltonian(n_qubits),
                        PauliTermHamiltonian(n_qubits), with_rz_extension};
    for (std::size_t i = 0; i < n_qubits; ++i) {
        out.h0.add(-1.0, PauliString::single(n_qubits, i, 'X'));
    }
    for (std::size_t i = 0; i + 1 < n_qubits; ++i) {
        std::string s(n_qubits, 'I');
        s[i] = 'Z';
        s[i + 1] = 'Z';
        out.h1.add(-rng.uniform(-1.0, 1.0), PauliString(std::move(s)));
    }
    out.h0.canonicalize();
    out.h1.canonicalize();
    return out;
}

/// Diagonal terms go to H0, everything else to H1.
inline HamiltonianPair split_diagonal(const PauliTermHamiltonian &h) {
    return {h.diagonal_part(), h.off_diagonal_part(), false};
}

inline ComplexMatrix dense_matrix(const PauliString &p) {
    const auto d = dimension_of(p.n_qubits());
    const auto phases = kernels::pauli_phases(p, d);
    const auto xmask = p.x_mask();
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                          static_cast<Eigen::Index>(d));
    for (std::size_t x = 0; x < d; ++x) {
        m(static_cast<Eigen::Index>(x ^ xmask), static_cast<Eigen::Index>(x)) =
            phases[x];
    }
    return m;
}

inline ComplexMatrix dense_matrix(const PauliTermHamiltonian &h) {
    const auto d = static_cast<Eigen::Index>(dimension_of(h.n_qubits()));
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (const auto &t : h.terms()) {
        m += t.coefficient * dense_matrix(t.string);
    }
    return m;
}

/// <psi|P|psi> without forming the matrix.
inline double expectation(const PauliString &p, const StateVector &psi) {
    const auto d = static_cast<std::size_t>(psi.size());
    if (d != (std::size_t{1} << p.n_qubits())) {
        fail(ErrorCode::Shape, "Pauli string / state size mismatch");
    }
    const auto phases = kernels::pauli_phases(p, d);
    const auto xmask = p.x_mask();
    Complex acc = 0.0;
    for (std::size_t x = 0; x < d; ++x) {
        acc += std::conj(psi(static_cast<Eigen::Index>(x ^ xmask))) * phases[x] *
               psi(static_cast<Eigen::Index>(x));
    }
    return acc.real();
}

inline double expectation(const PauliTermHamiltonian &h,
                          const StateVector &psi) {
    double e = 0.0;
    for (const auto &t : h.terms()) {
        e += t.coefficient * expectation(t.string, psi);
    }
    return e;
}

} // namespace noisescramble
