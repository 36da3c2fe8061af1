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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

namespace noisescramble {

using Complex = std::complex<double>;
/// Row-major so that a row of the density matrix is one contiguous span.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using StateVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxQubits = 12;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

inline std::size_t dimension_of(std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        fail(ErrorCode::InvalidSize,
             "qubit count " + std::to_string(n_qubits) + " outside [1, " +
                 std::to_string(kMaxQubits) + "]");
    }
    return std::size_t{1} << n_qubits;
}

inline double max_abs_hermitian_deviation(const ComplexMatrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// |0...0>, or the computational basis state `index`.
inline StateVector basis_state(std::size_t n_qubits, std::uint64_t index = 0) {
    const auto d = dimension_of(n_qubits);
    if (index >= d) {
        fail(ErrorCode::Shape, "basis index out of range");
    }
    StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(d));
    psi(static_cast<Eigen::Index>(index)) = 1.0;
    return psi;
}

inline std::size_t qubits_for_dimension(std::size_t d) {
    if (d < 2 || (d & (d - 1)) != 0) {
        fail(ErrorCode::Shape,
             "dimension " + std::to_string(d) + " is not a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < d) {
        ++n;
    }
    return n;
}

/**
 * @brief Dense N-qubit density matrix.
 *
 * Construction does not validate; call validate() when the matrix comes from
 * outside the simulator. The simulator keeps the invariants itself.
 */
class DensityMatrix {
  public:
    DensityMatrix() = default;

    /// |0...0><0...0|.
    explicit DensityMatrix(std::size_t n_qubits)
        : n_qubits_(n_qubits),
          data_(ComplexMatrix::Zero(
              static_cast<Eigen::Index>(dimension_of(n_qubits)),
              static_cast<Eigen::Index>(dimension_of(n_qubits)))) {
        data_(0, 0) = 1.0;
    }

    DensityMatrix(std::size_t n_qubits, ComplexMatrix data)
        : n_qubits_(n_qubits), data_(std::move(data)) {
        const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
        if (data_.rows() != d || data_.cols() != d) {
            fail(ErrorCode::Shape, "density matrix must be " +
                                       std::to_string(d) + "x" +
                                       std::to_string(d));
        }
    }

    static DensityMatrix from_matrix(ComplexMatrix data) {
        const auto n = qubits_for_dimension(static_cast<std::size_t>(data.rows()));
        return {n, std::move(data)};
    }

    static DensityMatrix pure(const StateVector &psi) {
        const auto n = qubits_for_dimension(static_cast<std::size_t>(psi.size()));
        return {n, psi * psi.adjoint()};
    }

    static DensityMatrix maximally_mixed(std::size_t n_qubits) {
        const auto d = static_cast<Eigen::Index>(dimension_of(n_qubits));
        ComplexMatrix m = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
        return {n_qubits, std::move(m)};
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(data_.rows());
    }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return data_; }
    [[nodiscard]] ComplexMatrix &matrix() noexcept { return data_; }

    [[nodiscard]] Complex trace() const { return data_.trace(); }

    /// <psi|rho|psi>.
    [[nodiscard]] double expectation(const StateVector &psi) const {
        return std::real(psi.dot(data_ * psi));
    }

    /// Replaces the matrix with (M + M^dagger) / 2.
    void symmetrize() {
        ComplexMatrix h = (data_ + data_.adjoint()) * 0.5;
        data_ = std::move(h);
    }

    /// Throws InvalidState unless Hermitian, unit-trace and PSD within the
    /// library tolerances.
    void validate() const {
        const double herm = max_abs_hermitian_deviation(data_);
        if (herm > kHermitianTolerance) {
            fail(ErrorCode::InvalidState,
                 "not Hermitian (deviation " + std::to_string(herm) + ")");
        }
        const double tr_err = std::abs(trace() - 1.0);
        if (tr_err > kTraceTolerance) {
            fail(ErrorCode::InvalidState,
                 "trace deviates from 1 by " + std::to_string(tr_err));
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(data_,
                                                        Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        if (min_eig < -kPsdTolerance) {
            fail(ErrorCode::InvalidState,
                 "negative eigenvalue " + std::to_string(min_eig));
        }
    }

  private:
    std::size_t n_qubits_ = 0;
    ComplexMatrix data_;
};

} // namespace noisescramble
