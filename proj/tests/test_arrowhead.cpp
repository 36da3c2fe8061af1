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

#include <algorithm>
#include <cmath>

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

DensityMatrix mixed_example() {
    StateVector p(2);
    p << 1.0, 1.0;
    p /= std::sqrt(2.0);
    return DensityMatrix(1, 0.5 * DensityMatrix(1).matrix() + 0.5 * (p * p.adjoint()));
}

DensityMatrix noisy_circuit(Rng &rng, std::size_t n, double eps, StateVector &psi) {
    const auto prog = oracle::random_circuit(rng, n, 30, eps);
    psi = run_ideal(prog, basis_state(n));
    return run_circuit(prog, DensityMatrix(n));
}

} // namespace

TEST(Arrowhead, WhiteNoiseHasNoBorder) {
    Rng rng(1);
    const auto psi = oracle::random_state(rng, 8);
    const auto wn = build_white_noise_state(psi, 0.3);
    const auto form = arrowhead_transform(wn.matrix, psi);
    EXPECT_LE(form.border.maxCoeff(), 1e-12);
    for (Eigen::Index k = 0; k < form.diagonal.size(); ++k) {
        EXPECT_NEAR(form.diagonal(k), 0.7 / 8.0, 1e-12);
    }
    EXPECT_NEAR(form.corner, 0.3 + 0.7 / 8.0, 1e-12);
}

TEST(Arrowhead, TwoByTwoExample) {
    const auto rho = mixed_example();
    const auto form = arrowhead_transform(rho, basis_state(1));
    EXPECT_NEAR(form.corner, 0.75, 1e-14);
    ASSERT_EQ(form.border.size(), 1);
    EXPECT_NEAR(form.border(0), 0.25, 1e-14);
    EXPECT_NEAR(form.diagonal(0), 0.25, 1e-14);
    // sqrt(sum C^2) is the operator norm of the commutator
    const ComplexMatrix comm = hermitian_commutator(rho, basis_state(1));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(comm);
    EXPECT_NEAR(std::sqrt(form.border_norm_squared()),
                es.eigenvalues().cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Arrowhead, ReproducesTransformAndSpectrum) {
    Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        StateVector psi;
        const auto rho = noisy_circuit(rng, 3, 0.05, psi);
        const auto form = arrowhead_transform(rho, psi);
        EXPECT_LE(arrowhead_residual(form, rho), 1e-10);
        EXPECT_NEAR(form.corner, fidelity(rho, psi), 1e-10);
        EXPECT_GE(form.border.minCoeff(), 0.0);
        EXPECT_GE(form.diagonal.minCoeff(), 0.0);
        const ComplexMatrix u = form.transform;
        EXPECT_LE((u * u.adjoint() - ComplexMatrix::Identity(8, 8)).cwiseAbs().maxCoeff(),
                  1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form.dense());
        Eigen::VectorXd arrow = es.eigenvalues().reverse();
        const auto lambda = spectrum(rho);
        EXPECT_LE((arrow - lambda).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_NEAR(form.border_norm_squared(), commutator_variance(rho, psi), 1e-12);
    }
}

TEST(SecularEquation, WhiteNoiseRootIsCorner) {
    const auto psi = basis_state(2);
    const auto wn = build_white_noise_state(psi, 0.5);
    const auto form = arrowhead_transform(wn.matrix, psi);
    EXPECT_NEAR(secular_residual(form, 0.5 + 0.5 / 4.0), 0.0, 1e-14);
}

TEST(SecularEquation, TwoByTwoExample) {
    const auto form = arrowhead_transform(mixed_example(), basis_state(1));
    const double lambda1 = (1.0 + std::sqrt(0.5)) / 2.0;
    EXPECT_LE(std::abs(secular_residual(form, lambda1)), 1e-10);
    // at x = F the residual is sum C^2 / (D - F), nonzero
    EXPECT_NEAR(secular_residual(form, 0.75), 0.0625 / (0.25 - 0.75), 1e-14);
}

TEST(SecularEquation, RandomStatesSatisfyIt) {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        StateVector psi;
        const auto rho = noisy_circuit(rng, 3, 0.05, psi);
        const auto form = arrowhead_transform(rho, psi);
        const auto lambda = spectrum(rho);
        for (Eigen::Index k = 0; k < lambda.size(); ++k) {
            const bool on_pole = ((form.diagonal.array() - lambda(k)).abs() <=
                                  kPoleTolerance)
                                     .any();
            if (!on_pole) {
                EXPECT_LE(std::abs(secular_residual(form, lambda(k))), 1e-8);
            }
        }
    }
}

TEST(SecularEquation, ExtendedPrecisionCheck) {
    // These draws include eigenvalues within 1e-10 of a pole with a border
    // near 1e-6, where the double-precision residual reaches 1e-6.
    Rng rng(104);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto prog = oracle::random_circuit(rng, 3, 40, rng.uniform(1e-3, 0.1));
        const auto psi = run_ideal(prog, basis_state(3));
        const auto rho = run_circuit(prog, DensityMatrix(3));
        const auto check = secular_check(rho, psi);
        ASSERT_EQ(check.residuals.size(), 8U);
        EXPECT_LE((check.eigenvalues - spectrum(rho)).cwiseAbs().maxCoeff(), 1e-12);
        worst = std::max(worst, check.max_abs_residual);
    }
    EXPECT_LE(worst, 1e-8);
}

TEST(SecularEquation, ExtendedTransformMatchesDouble) {
    Rng rng(7);
    StateVector psi;
    const auto rho = noisy_circuit(rng, 3, 0.05, psi);
    const auto lo = arrowhead_transform(rho, psi);
    const auto hi = basic_arrowhead_transform<long double>(rho, psi);
    EXPECT_NEAR(static_cast<double>(hi.corner), lo.corner, 1e-13);
    for (Eigen::Index k = 0; k < lo.border.size(); ++k) {
        EXPECT_NEAR(static_cast<double>(hi.diagonal(k)), lo.diagonal(k), 1e-13);
        EXPECT_NEAR(static_cast<double>(hi.border(k)), lo.border(k), 1e-10);
    }
}

TEST(SecularEquation, PoleRejected) {
    const auto form = arrowhead_transform(mixed_example(), basis_state(1));
    EXPECT_EQ(code_of([&] { secular_residual(form, 0.25); }), ErrorCode::Pole);
}

TEST(FidelityGap, WhiteNoiseHasZeroGap) {
    const auto wn = build_white_noise_state(basis_state(2), 0.6);
    const auto g = lambda1_fidelity_gap(wn.matrix, basis_state(2));
    EXPECT_NEAR(g.gap, 0.0, 1e-14);
    EXPECT_TRUE(g.applicable);
}

TEST(FidelityGap, TwoByTwoExampleBoundNotApplicable) {
    const auto g = lambda1_fidelity_gap(mixed_example(), basis_state(1));
    const double lambda1 = (1.0 + std::sqrt(0.5)) / 2.0;
    EXPECT_NEAR(g.gap, lambda1 - 0.75, 1e-14);
    EXPECT_NEAR(g.bound, 0.0625 / (2.0 * lambda1 - 1.0), 1e-14);
    EXPECT_GT(g.gap, g.bound);
    EXPECT_FALSE(g.applicable);
    EXPECT_LE(g.gap, g.exact_bound + 1e-14);
}

TEST(FidelityGap, NoisySelWithinBounds) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        AnsatzSpec spec{AnsatzFamily::SEL, 6, 4, ParameterMode::Random, seed};
        auto prog = build_sel_circuit(spec);
        prog.noise.per_gate_error = 1e-3;
        const auto psi = run_ideal(prog, basis_state(6));
        const auto rho = run_circuit(prog, DensityMatrix(6));
        const auto g = lambda1_fidelity_gap(rho, psi);
        EXPECT_GE(g.gap, -1e-12);
        EXPECT_LE(g.gap, g.exact_bound + 1e-12);
        if (g.applicable) {
            EXPECT_LE(g.gap, g.bound + 1e-12);
        }
    }
}

TEST(FidelityGap, ExactBoundHoldsOnRandomStates) {
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const DensityMatrix rho(2, oracle::random_density(rng, 4));
        const auto psi = oracle::random_state(rng, 4);
        const auto g = lambda1_fidelity_gap(rho, psi);
        EXPECT_GE(g.gap, -1e-12);
        EXPECT_LE(g.gap, g.exact_bound + 1e-12);
        if (g.applicable) {
            EXPECT_LE(g.gap, g.bound + 1e-12);
        }
    }
}

TEST(WhiteNoiseDistanceIdentity, WhiteNoiseErrorGivesZero) {
    Rng rng(5);
    const auto psi = oracle::random_state(rng, 8);
    const auto r = white_noise_distance_identity(psi, 0.4, DensityMatrix::maximally_mixed(3));
    EXPECT_NEAR(r.lhs, 0.0, 1e-14);
    EXPECT_NEAR(r.rhs, 0.0, 1e-14);
}

TEST(WhiteNoiseDistanceIdentity, QubitHandExample) {
    const auto r = white_noise_distance_identity(basis_state(1), 0.5,
                                       DensityMatrix::pure(basis_state(1, 1)));
    EXPECT_NEAR(r.lhs, 0.25, 1e-14);
    EXPECT_NEAR(r.rhs, 0.25, 1e-14);
}

TEST(WhiteNoiseDistanceIdentity, HoldsOnRandomDraws) {
    Rng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto psi = oracle::random_state(rng, 8);
        const DensityMatrix err(3, oracle::random_density(rng, 8));
        const auto r = white_noise_distance_identity(psi, rng.uniform01(), err);
        EXPECT_NEAR(r.lhs, r.rhs, 1e-9);
    }
}

TEST(WhiteNoiseDistanceIdentity, InvalidErrorStateRejected) {
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    EXPECT_EQ(code_of([&] {
                  white_noise_distance_identity(basis_state(1), 0.5, DensityMatrix(1, bad));
              }),
              ErrorCode::InvalidState);
}
