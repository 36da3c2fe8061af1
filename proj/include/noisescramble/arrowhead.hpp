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
#include "noisescramble/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace noisescramble {

/**
 * @brief U rho U^dagger in arrowhead form: corner F, border C_2..C_d and
 * diagonal D_2..D_d, all non-negative, zeros elsewhere. Row 0 of U is
 * <psi_id|, so the corner is the fidelity. D is sorted descending.
 */
template <typename Real> struct BasicArrowheadForm {
    using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

    Real corner = 0;
    Vector border;    // C_k, k = 2..d
    Vector diagonal;  // D_k, k = 2..d
    CMatrix transform; // U

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(border.size()) + 1;
    }

    [[nodiscard]] Matrix dense() const {
        const auto d = static_cast<Eigen::Index>(dim());
        Matrix m = Matrix::Zero(d, d);
        m(0, 0) = corner;
        m.block(0, 1, 1, d - 1) = border.transpose();
        m.block(1, 0, d - 1, 1) = border;
        m.diagonal().tail(d - 1) = diagonal;
        return m;
    }

    /// sum_k C_k^2, which equals ||[rho_id, rho]||_inf^2 = Var[rho].
    [[nodiscard]] Real border_norm_squared() const { return border.squaredNorm(); }
};

using ArrowheadForm = BasicArrowheadForm<double>;

/// Arrowhead transform carried out in `Real` arithmetic after validating the
/// double-precision inputs.
template <typename Real>
BasicArrowheadForm<Real> basic_arrowhead_transform(const DensityMatrix &rho,
                                                   const StateVector &psi_id) {
    using CScalar = std::complex<Real>;
    using CMatrix = typename BasicArrowheadForm<Real>::CMatrix;
    using CVector = Eigen::Matrix<CScalar, Eigen::Dynamic, 1>;
    require_normalised(psi_id);
    require_same_dim(rho, psi_id);
    detail::require_hermitian(rho.matrix(), "density matrix");
    const Eigen::Index d = psi_id.size();
    CMatrix r = rho.matrix().cast<CScalar>();
    r = ((r + r.adjoint()) * Real(0.5)).eval();
    const CVector psi = psi_id.cast<CScalar>();

    // Basis completion: the Householder Q of psi has first column e^{i phi} psi.
    Eigen::HouseholderQR<CMatrix> qr{CMatrix(psi)};
    CMatrix q = qr.householderQ();
    const auto overlap = static_cast<double>(std::abs(q.col(0).dot(psi)));
    const auto ortho = static_cast<double>(
        (q.adjoint() * q - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
    if (std::abs(overlap - 1.0) > 1e-10 || ortho > 1e-10) {
        fail(ErrorCode::NumericalRank, "basis completion of psi_id is defective");
    }
    const CMatrix complement = q.rightCols(d - 1);

    // Diagonalise rho compressed onto the complement of psi_id.
    CMatrix compressed = complement.adjoint() * r * complement;
    compressed = ((compressed + compressed.adjoint()) * Real(0.5)).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(compressed);
    if (es.info() != Eigen::Success) {
        fail(ErrorCode::InvalidState, "arrowhead diagonalisation did not converge");
    }

    BasicArrowheadForm<Real> out;
    out.border.resize(d - 1);
    out.diagonal.resize(d - 1);
    CMatrix basis(d, d); // columns are the new basis vectors
    basis.col(0) = psi;
    const CVector rho_psi = r * psi;
    out.corner = std::real(psi.dot(rho_psi));
    for (Eigen::Index k = 0; k < d - 1; ++k) {
        const Eigen::Index src = d - 2 - k; // descending D
        CVector e = complement * es.eigenvectors().col(src);
        const CScalar c = e.dot(rho_psi);
        const Real mag = std::abs(c);
        if (mag > 0) {
            e *= c / mag; // <e'|rho|psi> = conj(phase) c = |c|
        }
        Real dk = es.eigenvalues()(src);
        if (dk < 0) {
            if (dk < -Real(kNegativeClamp)) {
                fail(ErrorCode::InvalidState, "arrowhead diagonal entry " +
                                                  std::to_string(static_cast<double>(dk)) +
                                                  " < 0");
            }
            dk = 0;
        }
        basis.col(k + 1) = e;
        out.border(k) = mag;
        out.diagonal(k) = dk;
    }
    out.transform = basis.adjoint();
    return out;
}

inline ArrowheadForm arrowhead_transform(const DensityMatrix &rho,
                                         const StateVector &psi_id) {
    return basic_arrowhead_transform<double>(rho, psi_id);
}

/// max |U rho U^dagger - arrowhead| over all entries.
inline double arrowhead_residual(const ArrowheadForm &form,
                                 const DensityMatrix &rho) {
    const ComplexMatrix t =
        form.transform * rho.matrix() * form.transform.adjoint();
    return (t - form.dense().cast<Complex>()).cwiseAbs().maxCoeff();
}

/// Distance within which x counts as sitting on a pole D_k.
inline constexpr double kPoleTolerance = 1e-12;

/// P(x) = x - F + sum_k C_k^2 / (D_k - x); eigenvalues of rho are its roots.
template <typename Real>
Real secular_residual(const BasicArrowheadForm<Real> &form, Real x) {
    Real acc = x - form.corner;
    for (Eigen::Index k = 0; k < form.border.size(); ++k) {
        const Real gap = form.diagonal(k) - x;
        if (std::abs(gap) <= Real(kPoleTolerance)) {
            fail(ErrorCode::Pole, "x = " + std::to_string(static_cast<double>(x)) +
                                      " sits on the pole D_" + std::to_string(k + 2));
        }
        acc += form.border(k) * form.border(k) / gap;
    }
    return acc;
}

struct SecularCheck {
    Eigen::VectorXd eigenvalues;            ///< descending
    std::vector<std::optional<double>> residuals; ///< empty where lambda is on a pole
    double max_abs_residual = 0.0;
    std::size_t on_pole = 0;
};

/**
 * |P(lambda)| for every eigenvalue of rho. Near a pole with a small border
 * P' ~ C_k^2 / (D_k - lambda)^2 is huge, so double-precision eigenvalues
 * alone leave residuals around 1e-6. The spectrum and the transform are
 * therefore both computed in long double.
 */
inline SecularCheck secular_check(const DensityMatrix &rho, const StateVector &psi_id) {
    using Real = long double;
    using CMatrix = BasicArrowheadForm<Real>::CMatrix;
    const auto form = basic_arrowhead_transform<Real>(rho, psi_id);
    CMatrix r = rho.matrix().cast<std::complex<Real>>();
    r = ((r + r.adjoint()) * Real(0.5)).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        fail(ErrorCode::InvalidState, "eigendecomposition did not converge");
    }
    SecularCheck out;
    const auto d = es.eigenvalues().size();
    out.eigenvalues.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const Real lambda = es.eigenvalues()(d - 1 - i);
        out.eigenvalues(i) = static_cast<double>(lambda);
        try {
            const auto p = static_cast<double>(secular_residual(form, lambda));
            out.residuals.emplace_back(p);
            out.max_abs_residual = std::max(out.max_abs_residual, std::abs(p));
        } catch (const Error &e) {
            if (e.code() != ErrorCode::Pole) {
                throw;
            }
            out.residuals.emplace_back();
            ++out.on_pole;
        }
    }
    return out;
}

struct FidelityGap {
    double gap = 0.0;          ///< lambda_1 - F
    double bound = std::numeric_limits<double>::infinity(); ///< ||[rho_id,rho]||_inf^2 / (2 lambda_1 - 1)
    /// sum_k C_k^2 / min_k (lambda_1 - D_k); always an upper bound on gap.
    double exact_bound = std::numeric_limits<double>::infinity();
    /// True when lambda_1 > 1/2 and min_k (lambda_1 - D_k) >= 2 lambda_1 - 1,
    /// the conditions under which `bound` is guaranteed.
    bool applicable = false;
    double lambda1 = 0.0;
    double fidelity = 0.0;
};

inline FidelityGap lambda1_fidelity_gap(const DensityMatrix &rho,
                                        const StateVector &psi_id) {
    const auto form = arrowhead_transform(rho, psi_id);
    const auto lambda = spectrum(rho);
    FidelityGap out;
    out.lambda1 = lambda(0);
    out.fidelity = form.corner;
    out.gap = out.lambda1 - form.corner;
    const double sum_c2 = form.border_norm_squared();
    const double min_sep =
        form.diagonal.size() > 0 ? out.lambda1 - form.diagonal.maxCoeff() : 0.0;
    if (min_sep > 0.0) {
        out.exact_bound = sum_c2 / min_sep;
    } else if (sum_c2 == 0.0) {
        out.exact_bound = 0.0;
    }
    if (out.lambda1 > 0.5 + 1e-9) {
        const double denom = 2.0 * out.lambda1 - 1.0;
        out.bound = sum_c2 / denom;
        out.applicable = min_sep >= denom;
    }
    return out;
}

struct DistanceIdentity {
    double lhs = 0.0; ///< 1/2 ||rho - rho_wn(eta)||_1
    double rhs = 0.0; ///< (1 - eta) 1/2 ||p_mu - p_unif||_1
};

/**
 * For rho = eta |psi><psi| + (1 - eta) rho_err, the white-noise trace
 * distance depends only on the spectrum mu of rho_err. Both sides use the
 * halved trace norm.
 */
inline DistanceIdentity white_noise_distance_identity(const StateVector &psi_id, double eta,
                                            const DensityMatrix &rho_err) {
    rho_err.validate();
    require_normalised(psi_id);
    require_same_dim(rho_err, psi_id);
    const auto wn = build_white_noise_state(psi_id, eta);
    ComplexMatrix mixed =
        eta * (psi_id * psi_id.adjoint()) + (1.0 - eta) * rho_err.matrix();
    const DensityMatrix rho(rho_err.n_qubits(), std::move(mixed));
    const auto mu = detail::hermitian_eigenvalues(rho_err.matrix());
    const double u = 1.0 / static_cast<double>(mu.size());
    const double l1 = (mu.array() - u).abs().sum();
    return {0.5 * trace_distance(rho, wn.matrix), (1.0 - eta) * 0.5 * l1};
}

} // namespace noisescramble
