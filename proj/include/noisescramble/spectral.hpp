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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>

namespace noisescramble {

/// Hermiticity slack accepted by the spectral routines.
inline constexpr double kSpectralHermitianTolerance = 1e-10;
/// Eigenvalues in [-kNegativeClamp, 0) are treated as round-off and zeroed.
inline constexpr double kNegativeClamp = 1e-10;
/// lambda_1 closer than this to 1 makes W and C undefined.
inline constexpr double kDegenerateGap = 1e-12;
/// Eigenvalues closer than this are treated as one degenerate level.
inline constexpr double kDegeneracyTolerance = 1e-12;

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues; // descending
    ComplexMatrix eigenvectors;  // column k belongs to eigenvalue k

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(eigenvalues.size());
    }
    [[nodiscard]] double lambda1() const { return eigenvalues(0); }
    /// 1 - lambda_1 summed from the tail, which keeps precision when
    /// lambda_1 is within 1e-8 of one.
    [[nodiscard]] double one_minus_lambda1() const {
        return eigenvalues.tail(eigenvalues.size() - 1).sum();
    }
};

namespace detail {

inline void require_hermitian(const ComplexMatrix &m, const char *what) {
    const double dev = max_abs_hermitian_deviation(m);
    if (dev > kSpectralHermitianTolerance) {
        fail(ErrorCode::InvalidState, std::string(what) +
                                          " is not Hermitian (deviation " +
                                          std::to_string(dev) + ")");
    }
}

/// Reverses Eigen's ascending order, clamps round-off negatives and
/// renormalises to unit sum.
inline Eigen::VectorXd normalise_spectrum(const Eigen::VectorXd &ascending) {
    Eigen::VectorXd out = ascending.reverse();
    for (Eigen::Index k = 0; k < out.size(); ++k) {
        if (out(k) < 0.0) {
            if (out(k) < -kNegativeClamp) {
                fail(ErrorCode::InvalidState,
                     "density matrix has eigenvalue " + std::to_string(out(k)));
            }
            out(k) = 0.0;
        }
    }
    const double total = out.sum();
    if (!(total > 0.0)) {
        fail(ErrorCode::InvalidState, "density matrix has zero trace");
    }
    return out / total;
}

/// Eigenvalues of a Hermitian matrix, ascending.
inline Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        fail(ErrorCode::InvalidState, "eigenvalue iteration did not converge");
    }
    return es.eigenvalues();
}

} // namespace detail

/**
 * Descending eigendecomposition of rho. Within a degenerate level the basis
 * is rotated so that its first vector is the projection of `psi_id` (when
 * given), i.e. ties are broken towards the ideal state.
 */
inline SpectralDecomposition
eigendecompose(const DensityMatrix &rho,
               const std::optional<StateVector> &psi_id = std::nullopt) {
    detail::require_hermitian(rho.matrix(), "density matrix");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
    if (es.info() != Eigen::Success) {
        fail(ErrorCode::InvalidState, "eigendecomposition did not converge");
    }
    SpectralDecomposition out;
    out.eigenvalues = detail::normalise_spectrum(es.eigenvalues());
    out.eigenvectors = es.eigenvectors().rowwise().reverse();
    if (!psi_id) {
        return out;
    }
    const Eigen::Index d = out.eigenvalues.size();
    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index end = start + 1;
        while (end < d && std::abs(out.eigenvalues(end) - out.eigenvalues(start)) <=
                              kDegeneracyTolerance) {
            ++end;
        }
        const Eigen::Index g = end - start;
        if (g > 1) {
            auto block = out.eigenvectors.middleCols(start, g);
            Eigen::VectorXcd coeffs = block.adjoint() * (*psi_id);
            if (coeffs.norm() > 1e-14) {
                // Q's first column is parallel to coeffs.
                Eigen::HouseholderQR<Eigen::MatrixXcd> qr{
                    Eigen::MatrixXcd(coeffs)};
                Eigen::MatrixXcd q = qr.householderQ();
                ComplexMatrix rotated = block * q;
                block = rotated;
            }
        }
        start = end;
    }
    return out;
}

/// Descending, clamped, unit-sum eigenvalues without eigenvectors.
inline Eigen::VectorXd spectrum(const DensityMatrix &rho) {
    detail::require_hermitian(rho.matrix(), "density matrix");
    return detail::normalise_spectrum(detail::hermitian_eigenvalues(rho.matrix()));
}

/// Reference distribution the non-dominant spectrum is compared against.
enum class UniformReference {
    /// 1/(d-1): the normalised error spectrum vs. the uniform distribution
    /// over d-1 levels. This is the plotted definition and the default.
    NonDominant,
    /// 1/d: the variant arising from the white-noise trace-distance argument.
    FullDimension,
};

/**
 * Eigenvalue uniformity W = 1/2 sum_{k>=2} |lambda_k/(1-lambda_1) - u|, where
 * u = 1/(d-1) (default) or 1/d. Takes a descending spectrum.
 */
inline double uniformity_W(const Eigen::VectorXd &eigenvalues,
                           UniformReference ref = UniformReference::NonDominant) {
    const Eigen::Index d = eigenvalues.size();
    if (d < 2) {
        fail(ErrorCode::Shape, "uniformity needs dimension >= 2");
    }
    const double rest = eigenvalues.tail(d - 1).sum();
    if (rest <= kDegenerateGap) {
        fail(ErrorCode::DegenerateState,
             "lambda_1 is 1 to within 1e-12; W is undefined for a pure state");
    }
    const double u = ref == UniformReference::NonDominant
                         ? 1.0 / static_cast<double>(d - 1)
                         : 1.0 / static_cast<double>(d);
    double acc = 0.0;
    for (Eigen::Index k = 1; k < d; ++k) {
        acc += std::abs(eigenvalues(k) / rest - u);
    }
    return 0.5 * acc;
}

inline double uniformity_W(const SpectralDecomposition &spec,
                           UniformReference ref = UniformReference::NonDominant) {
    return uniformity_W(spec.eigenvalues, ref);
}

inline void require_normalised(const StateVector &psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        fail(ErrorCode::InvalidState,
             "state vector is not normalised (norm " +
                 std::to_string(psi.norm()) + ")");
    }
}

inline void require_same_dim(const DensityMatrix &rho, const StateVector &psi) {
    if (static_cast<std::size_t>(psi.size()) != rho.dim()) {
        fail(ErrorCode::Shape, "state vector and density matrix dimensions differ");
    }
}

/// F = <psi|rho|psi>.
inline double fidelity(const DensityMatrix &rho, const StateVector &psi) {
    require_same_dim(rho, psi);
    return rho.expectation(psi);
}

/// i [|psi><psi|, rho], which is Hermitian.
inline ComplexMatrix hermitian_commutator(const DensityMatrix &rho,
                                          const StateVector &psi) {
    using namespace std::complex_literals;
    require_same_dim(rho, psi);
    const StateVector v = rho.matrix() * psi;
    return 1i * (psi * v.adjoint() - v * psi.adjoint());
}

/// ||[rho_id, rho]||_1 as the sum of |eigenvalues| of i[rho_id, rho].
inline double commutator_trace_norm(const DensityMatrix &rho,
                                    const StateVector &psi) {
    require_normalised(psi);
    return detail::hermitian_eigenvalues(hermitian_commutator(rho, psi))
        .cwiseAbs()
        .sum();
}

/**
 * Var[rho] = <psi|rho^2|psi> - F^2, evaluated as ||(rho - F) psi||^2. The
 * second form is a sum of squares and does not cancel when Var ~ 1e-16.
 */
inline double commutator_variance(const DensityMatrix &rho,
                                  const StateVector &psi) {
    require_same_dim(rho, psi);
    require_normalised(psi);
    const StateVector v = rho.matrix() * psi;
    const Complex f = psi.dot(v);
    return (v - f * psi).squaredNorm();
}

/// ||[rho_id, rho]||_p = 2^(1/p) sqrt(Var[rho]); p = 1 here.
inline double commutator_norm_from_variance(const DensityMatrix &rho,
                                            const StateVector &psi) {
    return 2.0 * std::sqrt(commutator_variance(rho, psi));
}

struct CommutatorNorms {
    double absolute = 0.0; ///< ||[rho_id, rho]||_1
    double relative = 0.0; ///< C = absolute / (1 - lambda_1)
};

inline CommutatorNorms commutator_norm(const DensityMatrix &rho,
                                       const StateVector &psi,
                                       double one_minus_lambda1) {
    const double abs_norm = commutator_trace_norm(rho, psi);
    if (one_minus_lambda1 <= kDegenerateGap) {
        fail(ErrorCode::DegenerateState,
             "lambda_1 is 1 to within 1e-12; relative commutator norm undefined");
    }
    return {abs_norm, abs_norm / one_minus_lambda1};
}

inline CommutatorNorms commutator_norm(const DensityMatrix &rho,
                                       const StateVector &psi) {
    const auto lambda = spectrum(rho);
    return commutator_norm(rho, psi, lambda.tail(lambda.size() - 1).sum());
}

struct WhiteNoiseState {
    double eta = 0.0;
    StateVector ideal;
    DensityMatrix matrix;
};

/// eta |psi><psi| + (1 - eta) Id/d.
inline WhiteNoiseState build_white_noise_state(const StateVector &psi,
                                               double eta) {
    require_normalised(psi);
    if (!(eta >= 0.0 && eta <= 1.0)) {
        fail(ErrorCode::Domain, "eta " + std::to_string(eta) + " outside [0, 1]");
    }
    const auto d = psi.size();
    const auto n = qubits_for_dimension(static_cast<std::size_t>(d));
    ComplexMatrix m = eta * (psi * psi.adjoint());
    m.diagonal().array() += (1.0 - eta) / static_cast<double>(d);
    return {eta, psi, DensityMatrix(n, std::move(m))};
}

/// ||a - b||_1, the sum of |eigenvalues| of the difference (no factor 1/2).
inline double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        fail(ErrorCode::Shape, "trace distance between different dimensions");
    }
    ComplexMatrix diff = a.matrix() - b.matrix();
    detail::require_hermitian(diff, "difference matrix");
    diff = (diff + diff.adjoint()).eval() * 0.5;
    return detail::hermitian_eigenvalues(diff).cwiseAbs().sum();
}

struct BiasBound {
    double bias = 0.0;  ///< tr[O rho]/eta - <psi|O|psi>
    double bound = 0.0; ///< ||O||_inf ||rho - rho_wn(eta)||_1 / eta
};

/// Bias left after rescaling a noisy expectation value by eta, together with
/// its trace-distance bound. |bias| <= bound holds for every input.
inline BiasBound bias_bound(const ComplexMatrix &observable,
                            const DensityMatrix &rho, const StateVector &psi,
                            double eta) {
    if (static_cast<std::size_t>(observable.rows()) != rho.dim() ||
        observable.rows() != observable.cols()) {
        fail(ErrorCode::Shape, "observable dimension does not match the state");
    }
    if (max_abs_hermitian_deviation(observable) > kSpectralHermitianTolerance) {
        fail(ErrorCode::InvalidObservable, "observable is not Hermitian");
    }
    if (std::abs(observable.trace()) > 1e-10) {
        fail(ErrorCode::InvalidObservable, "observable is not traceless");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        fail(ErrorCode::Domain, "eta must lie in (0, 1]");
    }
    require_same_dim(rho, psi);
    const auto wn = build_white_noise_state(psi, eta);
    const double noisy = std::real((observable * rho.matrix()).trace());
    const double ideal = std::real(psi.dot(observable * psi));
    const double op_norm =
        detail::hermitian_eigenvalues(observable).cwiseAbs().maxCoeff();
    return {noisy / eta - ideal,
            op_norm * trace_distance(rho, wn.matrix) / eta};
}

/**
 * Every spectral quantity for one noisy state. Optional fields are empty
 * when undefined; `null_reason` then says why.
 */
struct SpectralReport {
    double fidelity = 0.0;
    double lambda1 = 0.0;
    double one_minus_lambda1 = 0.0;
    std::optional<double> uniformity;     ///< W
    double commutator_norm_abs = 0.0;     ///< ||[rho_id, rho]||_1
    std::optional<double> commutator_norm_rel; ///< C
    double trace_dist_wn = 0.0; ///< ||rho - rho_wn(lambda_1)||_1
    std::optional<double> eta_estimate;   ///< (1 - eps)^nu
    std::optional<double> fidelity_error; ///< E_F = <psi|rho_err|psi>
    double variance = 0.0;                ///< <psi|rho^2|psi> - F^2
    /// 1/2 ||rho - rho_wn||_1 - (1 - lambda_1) W, diagnostic only.
    std::optional<double> white_noise_residual;
    std::string null_reason;
};

/// `eta_estimate`, when given, is the no-error probability (1 - eps)^nu used
/// for E_F. rho_wn for the trace distance uses eta = lambda_1.
inline SpectralReport analyze(const DensityMatrix &rho, const StateVector &psi_id,
                              std::optional<double> eta_estimate = std::nullopt) {
    require_normalised(psi_id);
    require_same_dim(rho, psi_id);
    SpectralReport r;
    const auto lambda = spectrum(rho);
    r.lambda1 = lambda(0);
    r.one_minus_lambda1 = lambda.tail(lambda.size() - 1).sum();
    r.fidelity = fidelity(rho, psi_id);
    r.variance = commutator_variance(rho, psi_id);
    r.commutator_norm_abs = commutator_trace_norm(rho, psi_id);
    r.trace_dist_wn =
        trace_distance(rho, build_white_noise_state(psi_id, r.lambda1).matrix);
    r.eta_estimate = eta_estimate;
    if (eta_estimate && *eta_estimate < 1.0) {
        r.fidelity_error = (r.fidelity - *eta_estimate) / (1.0 - *eta_estimate);
    }
    if (r.one_minus_lambda1 > kDegenerateGap) {
        r.uniformity = uniformity_W(lambda);
        r.commutator_norm_rel = r.commutator_norm_abs / r.one_minus_lambda1;
        r.white_noise_residual =
            0.5 * r.trace_dist_wn - r.one_minus_lambda1 * *r.uniformity;
    } else {
        r.null_reason = "degenerate";
    }
    return r;
}

} // namespace noisescramble
