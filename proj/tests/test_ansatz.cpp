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
#include "noisescramble.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <numbers>

using namespace noisescramble;

namespace {

template <typename F> ErrorCode code_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no noisescramble::Error thrown";
    return ErrorCode::Io;
}

std::size_t count_kind(const CircuitProgram &p, GateKind k) {
    std::size_t c = 0;
    for (const auto &g : p.gates) {
        c += g.kind == k ? 1 : 0;
    }
    return c;
}

} // namespace

TEST(XxxHamiltonian, TwoSitesHasUnitCouplings) {
    const auto h = build_xxx_hamiltonian(2, 1);
    ASSERT_EQ(h.h1.size(), 3U);
    std::set<std::string> names;
    for (const auto &t : h.h1.terms()) {
        EXPECT_DOUBLE_EQ(t.coefficient, 1.0);
        names.insert(t.string.str());
    }
    EXPECT_EQ(names, (std::set<std::string>{"XX", "YY", "ZZ"}));
}

TEST(XxxHamiltonian, OnSiteFieldsBounded) {
    const auto h = build_xxx_hamiltonian(3, 9);
    ASSERT_EQ(h.h0.size(), 3U);
    for (const auto &t : h.h0.terms()) {
        EXPECT_EQ(t.string.weight(), 1U);
        EXPECT_TRUE(t.string.is_diagonal());
        EXPECT_LE(std::abs(t.coefficient), 1.0);
    }
    EXPECT_EQ(build_xxx_hamiltonian(3, 9).h0, h.h0);
    EXPECT_EQ(code_of([] { build_xxx_hamiltonian(1, 0); }), ErrorCode::InvalidSize);
}

TEST(TfiHamiltonian, FieldAndCouplings) {
    const auto h = build_tfi_hamiltonian(4, 5, false);
    ASSERT_EQ(h.h0.size(), 4U);
    for (const auto &t : h.h0.terms()) {
        EXPECT_DOUBLE_EQ(t.coefficient, -1.0);
        EXPECT_EQ(t.string.weight(), 1U);
        EXPECT_EQ(t.string[t.string.support()[0]], 'X');
    }
    ASSERT_EQ(h.h1.size(), 3U);
    for (const auto &t : h.h1.terms()) {
        EXPECT_LE(std::abs(t.coefficient), 1.0);
        EXPECT_EQ(t.string.weight(), 2U);
        EXPECT_TRUE(t.string.is_diagonal());
    }
    EXPECT_EQ(build_tfi_hamiltonian(4, 5, false).h1, h.h1);
    EXPECT_TRUE(build_tfi_hamiltonian(4, 5, true).with_rz_extension);
    EXPECT_EQ(code_of([] { build_tfi_hamiltonian(1, 0, false); }), ErrorCode::InvalidSize);
}

TEST(DenseMatrix, MatchesKroneckerOracle) {
    for (const char *s : {"X", "YZ", "XIY", "ZZYX"}) {
        const auto m = dense_matrix(PauliString(s));
        EXPECT_LE((m - oracle::pauli_string(s)).cwiseAbs().maxCoeff(), 0.0) << s;
    }
}

TEST(SelCircuit, GateCounts) {
    AnsatzSpec spec{AnsatzFamily::SEL, 3, 1, ParameterMode::Random, 1};
    const auto p = build_sel_circuit(spec);
    EXPECT_EQ(p.gate_count(), 12U);
    EXPECT_EQ(count_kind(p, GateKind::CNOT), 3U);
    // ring: the last CNOT wraps to qubit 0
    EXPECT_EQ(p.gates.back().support, (std::vector<std::size_t>{2, 0}));
    EXPECT_EQ(p.gates[0].kind, GateKind::RotationZ);
    EXPECT_EQ(p.gates[1].kind, GateKind::RotationY);
    EXPECT_EQ(p.gates[2].kind, GateKind::RotationZ);
    AnsatzSpec big{AnsatzFamily::SEL, 10, 5, ParameterMode::Random, 1};
    EXPECT_EQ(build_sel_circuit(big).gate_count(), 200U);
}

TEST(SelCircuit, DeterministicAndAnglesInRange) {
    AnsatzSpec spec{AnsatzFamily::SEL, 4, 3, ParameterMode::Random, 77};
    const auto a = build_sel_circuit(spec);
    EXPECT_EQ(a, build_sel_circuit(spec));
    spec.seed = 78;
    EXPECT_NE(a, build_sel_circuit(spec));
    for (const auto &g : a.gates) {
        EXPECT_LE(std::abs(g.angle), 2.0 * std::numbers::pi);
    }
}

TEST(SelCircuit, ZeroLayersRejected) {
    AnsatzSpec spec{AnsatzFamily::SEL, 4, 0, ParameterMode::Random, 1};
    EXPECT_EQ(code_of([&] { build_sel_circuit(spec); }), ErrorCode::InvalidSize);
}

TEST(HvaCircuit, VqeScheduleAngles) {
    PauliTermHamiltonian h0(2);
    h0.add(1.0, PauliString("ZI"));
    PauliTermHamiltonian h1(2);
    h1.add(1.0, PauliString("XX"));
    AnsatzSpec spec{AnsatzFamily::HvaXxx, 2, 4, ParameterMode::Vqe, 0};
    const auto p = build_hva_circuit(spec, h0, h1);
    // ground state of +Z on qubit 0 is |1>: one R_x(pi)
    ASSERT_EQ(p.gates.front().kind, GateKind::RotationX);
    std::vector<double> beta;
    std::vector<double> gamma;
    for (const auto &g : p.gates) {
        if (g.kind != GateKind::PauliExp) {
            continue;
        }
        (g.pauli.str() == "ZI" ? beta : gamma).push_back(g.angle);
    }
    EXPECT_EQ(gamma, (std::vector<double>{0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(beta, (std::vector<double>{0.75, 0.5, 0.25, 0.0}));
}

TEST(HvaCircuit, XxxTwoSiteLayerContents) {
    AnsatzSpec spec{AnsatzFamily::HvaXxx, 2, 1, ParameterMode::Vqe, 0};
    const auto inst = build_ansatz(spec, 3);
    std::size_t z = 0;
    std::size_t two = 0;
    for (const auto &g : inst.program.gates) {
        if (g.kind == GateKind::PauliExp) {
            (g.pauli.weight() == 1 ? z : two) += 1;
        }
    }
    EXPECT_EQ(z, 2U);
    EXPECT_EQ(two, 3U);
}

TEST(HvaCircuit, RandomModeDeterministic) {
    AnsatzSpec spec{AnsatzFamily::HvaXxx, 4, 3, ParameterMode::Random, 11};
    const auto a = build_ansatz(spec, 2).program;
    EXPECT_EQ(a, build_ansatz(spec, 2).program);
    spec.seed = 12;
    EXPECT_NE(a, build_ansatz(spec, 2).program);
}

TEST(HvaCircuit, TfiPreparesPlusStateAndRzVariantAddsGates) {
    AnsatzSpec spec{AnsatzFamily::HvaTfi, 3, 2, ParameterMode::Random, 4};
    const auto plain = build_ansatz(spec, 1).program;
    for (std::size_t q = 0; q < 3; ++q) {
        EXPECT_EQ(plain.gates[q].kind, GateKind::Hadamard);
    }
    // prep state is the ground state of H0 = -sum X
    const auto h = build_tfi_hamiltonian(3, 1, false);
    CircuitProgram prep{3, {plain.gates.begin(), plain.gates.begin() + 3}, {}};
    EXPECT_NEAR(expectation(h.h0, run_ideal(prep, basis_state(3))), -3.0, 1e-12);

    spec.family = AnsatzFamily::HvaTfiRz;
    const auto rz = build_ansatz(spec, 1).program;
    EXPECT_EQ(rz.gate_count(), plain.gate_count() + 2 * 3);
    EXPECT_EQ(count_kind(rz, GateKind::RotationZ), 6U);
}

TEST(HvaCircuit, GroundStatePreparationOfDiagonalH0) {
    const auto h = build_xxx_hamiltonian(4, 8);
    const auto gates = detail::ground_state_preparation(h.h0);
    CircuitProgram prep{4, gates, {}};
    const auto psi = run_ideal(prep, basis_state(4));
    const auto m = dense_matrix(h.h0);
    EXPECT_NEAR(expectation(h.h0, psi), m.diagonal().real().minCoeff(), 1e-12);
}

TEST(HvaCircuit, MismatchedHamiltonianIsShapeError) {
    AnsatzSpec spec{AnsatzFamily::HvaXxx, 3, 1, ParameterMode::Vqe, 0};
    const auto h = build_xxx_hamiltonian(2, 0);
    EXPECT_EQ(code_of([&] { build_hva_circuit(spec, h.h0, h.h1); }), ErrorCode::Shape);
}

TEST(HvaCircuit, EmptyHamiltonianFileFailsOnConstruction) {
    AnsatzSpec spec{AnsatzFamily::HvaSparse, 2, 1, ParameterMode::Random, 0};
    EXPECT_EQ(code_of([&] { build_ansatz(spec, 0, parse_hamiltonian("")); }),
              ErrorCode::InvalidSize);
    EXPECT_EQ(code_of([&] { build_ansatz(spec, 0); }), ErrorCode::Config);
}

TEST(HvaCircuit, EmittedPauliExponentialsAreUnitary) {
    AnsatzSpec spec{AnsatzFamily::HvaXxx, 3, 3, ParameterMode::Random, 6};
    for (const auto &g : build_ansatz(spec, 1).program.gates) {
        const auto u = oracle::gate_unitary(g, 3);
        const double err =
            (u * u.adjoint() - oracle::Mat::Identity(8, 8)).cwiseAbs().maxCoeff();
        EXPECT_LE(err, 1e-12);
    }
    // The library kernel applied to the identity gives the same matrix.
    for (double theta : {0.0, 0.3, -2.1, 7.5}) {
        const auto g = Gate::pauli_exp(PauliString("XZY"), theta);
        ComplexMatrix id = ComplexMatrix::Identity(8, 8);
        kernels::apply_left(id.data(), 3, 8, g);
        // row-major buffer: apply_left acts on rows, i.e. computes U * Id
        EXPECT_LE((id - oracle::gate_unitary(g, 3)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(HvaCircuit, GateCountMatchesGateList) {
    for (auto fam : {AnsatzFamily::SEL, AnsatzFamily::HvaXxx, AnsatzFamily::HvaTfi,
                     AnsatzFamily::HvaTfiRz}) {
        AnsatzSpec spec{fam, 4, 3, ParameterMode::Random, 1};
        const auto p = build_ansatz(spec, 1).program;
        EXPECT_EQ(p.gate_count(), p.gates.size());
    }
}

TEST(HvaCircuit, XxxEnergyRespectsVariationalBound) {
    // The fixed-step schedule does not lower the energy monotonically in L,
    // but no depth can go below the exact ground energy.
    for (int s = 0; s < 5; ++s) {
        const auto h = build_xxx_hamiltonian(4, 100 + s);
        PauliTermHamiltonian full(4);
        for (const auto &t : h.h0.terms()) {
            full.add(t.coefficient, t.string);
        }
        for (const auto &t : h.h1.terms()) {
            full.add(t.coefficient, t.string);
        }
        oracle::Mat dense = oracle::Mat::Zero(16, 16);
        for (const auto &t : full.terms()) {
            dense += t.coefficient * oracle::pauli_string(t.string.str());
        }
        Eigen::SelfAdjointEigenSolver<oracle::Mat> es(dense);
        const double e0 = es.eigenvalues()(0);
        for (std::size_t depth : {1, 2, 4, 8, 16, 32}) {
            AnsatzSpec spec{AnsatzFamily::HvaXxx, 4, depth, ParameterMode::Vqe, 0};
            const auto prog = build_hva_circuit(spec, h.h0, h.h1);
            EXPECT_GE(expectation(full, run_ideal(prog, basis_state(4))), e0 - 1e-10)
                << "seed " << s << " L=" << depth;
        }
    }
}

TEST(SparseLayer, SingleTermRepeats) {
    PauliTermHamiltonian h1(2);
    h1.add(0.7, PauliString("XY"));
    const auto gates = build_sparse_hva_layer(h1, 25, 3);
    ASSERT_EQ(gates.size(), 25U);
    for (const auto &g : gates) {
        EXPECT_EQ(g.pauli.str(), "XY");
    }
}

TEST(SparseLayer, SamplingFrequencyFollowsWeights) {
    PauliTermHamiltonian h1(1);
    h1.add(0.9, PauliString("X"));
    h1.add(-0.1, PauliString("Y"));
    const auto gates = build_sparse_hva_layer(h1, 10000, 42);
    std::size_t first = 0;
    for (const auto &g : gates) {
        first += g.pauli.str() == "X" ? 1 : 0;
    }
    EXPECT_NEAR(static_cast<double>(first) / 1e4, 0.9, 0.02);
}

TEST(SparseLayer, VqeAnglesCompileTheLayer) {
    PauliTermHamiltonian h1(1);
    h1.add(0.9, PauliString("X"));
    h1.add(-0.1, PauliString("Y"));
    const auto gates =
        build_sparse_hva_layer(h1, 100, 1, {ParameterMode::Vqe, 0.5});
    for (const auto &g : gates) {
        const double expected = (g.pauli.str() == "X" ? 1.0 : -1.0) * 0.5 * 1.0 / 100.0;
        EXPECT_DOUBLE_EQ(g.angle, expected);
    }
}

TEST(SparseLayer, ZeroCoefficientsRejected) {
    PauliTermHamiltonian h1(1);
    h1.add(0.0, PauliString("X"));
    EXPECT_EQ(code_of([&] { build_sparse_hva_layer(h1, 10, 0); }),
              ErrorCode::InvalidDistribution);
    EXPECT_EQ(code_of([] { build_sparse_hva_layer(PauliTermHamiltonian(1), 10, 0); }),
              ErrorCode::InvalidDistribution);
}

TEST(SparseLayer, HvaSparseContributesKTermsPerLayer) {
    const auto file = load_hamiltonian_file(std::string(NS_SOURCE_DIR) +
                                            "/tools/configs/h4_chain.txt");
    AnsatzSpec one{AnsatzFamily::HvaSparse, 4, 1, ParameterMode::Random, 5, 100};
    AnsatzSpec two = one;
    two.n_layers = 2;
    const auto a = build_ansatz(one, 0, file).program;
    const auto b = build_ansatz(two, 0, file).program;
    const std::size_t h0_terms = file.diagonal_part().size();
    EXPECT_EQ(b.gate_count() - a.gate_count(), 100 + h0_terms);
    EXPECT_EQ(a, build_ansatz(one, 0, file).program);
}

TEST(AnsatzNames, RoundTrip) {
    for (auto f : {AnsatzFamily::SEL, AnsatzFamily::HvaXxx, AnsatzFamily::HvaTfi,
                   AnsatzFamily::HvaTfiRz, AnsatzFamily::HvaSparse}) {
        EXPECT_EQ(parse_ansatz_family(to_string(f)), f);
    }
    EXPECT_EQ(parse_parameter_mode("vqe"), ParameterMode::Vqe);
    EXPECT_EQ(code_of([] { parse_ansatz_family("QAOA"); }), ErrorCode::Config);
}
