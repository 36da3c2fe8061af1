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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace noisescramble {

/**
 * @brief Tensor product of single-qubit Paulis, written as a string over
 * {I, X, Y, Z}. Character q acts on qubit q; qubit 0 is the most significant
 * bit of a computational-basis index.
 */
class PauliString {
  public:
    PauliString() = default;

    explicit PauliString(std::string ops) : ops_(std::move(ops)) {
        for (std::size_t q = 0; q < ops_.size(); ++q) {
            if (!is_pauli_char(ops_[q])) {
                fail(ErrorCode::Parse, "invalid Pauli symbol '" +
                                           std::string(1, ops_[q]) +
                                           "' at position " +
                                           std::to_string(q));
            }
        }
    }

    /// Single non-identity Pauli `op` on `qubit` of an `n_qubits` register.
    static PauliString single(std::size_t n_qubits, std::size_t qubit,
                              char op) {
        std::string s(n_qubits, 'I');
        s.at(qubit) = op;
        return PauliString(std::move(s));
    }

    static constexpr bool is_pauli_char(char c) noexcept {
        return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
    }

    [[nodiscard]] const std::string &str() const noexcept { return ops_; }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return ops_.size(); }
    [[nodiscard]] char operator[](std::size_t q) const { return ops_[q]; }

    [[nodiscard]] std::size_t weight() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(ops_.begin(), ops_.end(),
                          [](char c) { return c != 'I'; }));
    }

    /// Contains only I and Z, i.e. diagonal in the computational basis.
    [[nodiscard]] bool is_diagonal() const noexcept {
        return std::all_of(ops_.begin(), ops_.end(),
                           [](char c) { return c == 'I' || c == 'Z'; });
    }

    [[nodiscard]] bool is_identity() const noexcept { return weight() == 0; }

    [[nodiscard]] std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < ops_.size(); ++q) {
            if (ops_[q] != 'I') {
                out.push_back(q);
            }
        }
        return out;
    }

    /// Bits flipped by the string (X and Y positions).
    [[nodiscard]] std::uint64_t x_mask() const noexcept {
        return mask_of([](char c) { return c == 'X' || c == 'Y'; });
    }
    /// Bits picking up a sign (Z and Y positions).
    [[nodiscard]] std::uint64_t z_mask() const noexcept {
        return mask_of([](char c) { return c == 'Z' || c == 'Y'; });
    }
    [[nodiscard]] std::size_t y_count() const noexcept {
        return static_cast<std::size_t>(
            std::count(ops_.begin(), ops_.end(), 'Y'));
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;
    friend auto operator<=>(const PauliString &a, const PauliString &b) {
        return a.ops_ <=> b.ops_;
    }

  private:
    template <class Pred>
    [[nodiscard]] std::uint64_t mask_of(Pred pred) const noexcept {
        std::uint64_t m = 0;
        const std::size_t n = ops_.size();
        for (std::size_t q = 0; q < n; ++q) {
            if (pred(ops_[q])) {
                m |= std::uint64_t{1} << (n - 1 - q);
            }
        }
        return m;
    }

    std::string ops_;
};

struct PauliTerm {
    double coefficient = 0.0;
    PauliString string;

    friend bool operator==(const PauliTerm &, const PauliTerm &) = default;
};

/// Real-weighted sum of Pauli strings on a fixed register.
class PauliTermHamiltonian {
  public:
    PauliTermHamiltonian() = default;
    explicit PauliTermHamiltonian(std::size_t n_qubits) : n_qubits_(n_qubits) {}

    void add(double coefficient, PauliString string) {
        if (!std::isfinite(coefficient)) {
            fail(ErrorCode::InvalidState, "non-finite Pauli coefficient");
        }
        if (string.n_qubits() != n_qubits_) {
            fail(ErrorCode::Shape, "Pauli string '" + string.str() +
                                       "' has length " +
                                       std::to_string(string.n_qubits()) +
                                       ", expected " +
                                       std::to_string(n_qubits_));
        }
        terms_.push_back({coefficient, std::move(string)});
    }

    /// Sorts terms by Pauli string and merges duplicates by summing.
    void canonicalize() {
        std::stable_sort(terms_.begin(), terms_.end(),
                         [](const PauliTerm &a, const PauliTerm &b) {
                             return a.string < b.string;
                         });
        std::vector<PauliTerm> merged;
        merged.reserve(terms_.size());
        for (auto &t : terms_) {
            if (!merged.empty() && merged.back().string == t.string) {
                merged.back().coefficient += t.coefficient;
            } else {
                merged.push_back(std::move(t));
            }
        }
        terms_ = std::move(merged);
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }

    [[nodiscard]] PauliTermHamiltonian diagonal_part() const {
        return filtered([](const PauliTerm &t) { return t.string.is_diagonal(); });
    }
    [[nodiscard]] PauliTermHamiltonian off_diagonal_part() const {
        return filtered(
            [](const PauliTerm &t) { return !t.string.is_diagonal(); });
    }

    friend bool operator==(const PauliTermHamiltonian &,
                           const PauliTermHamiltonian &) = default;

  private:
    template <class Pred>
    [[nodiscard]] PauliTermHamiltonian filtered(Pred pred) const {
        PauliTermHamiltonian out(n_qubits_);
        for (const auto &t : terms_) {
            if (pred(t)) {
                out.terms_.push_back(t);
            }
        }
        return out;
    }

    std::size_t n_qubits_ = 0;
    std::vector<PauliTerm> terms_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto *ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

} // namespace detail

/**
 * Reads `<coefficient> <pauli-string>` lines. Blank lines and anything after
 * `#` are ignored. The first term fixes the qubit count. The result is
 * canonicalised (sorted, duplicates merged).
 */
inline PauliTermHamiltonian parse_hamiltonian(std::istream &in) {
    PauliTermHamiltonian h;
    bool sized = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = detail::trim(view);
        if (view.empty()) {
            continue;
        }
        const auto where = " at line " + std::to_string(line_no);
        const auto sep = view.find_first_of(" \t");
        if (sep == std::string_view::npos) {
            fail(ErrorCode::Parse, "expected '<float> <pauli-string>'" + where);
        }
        const std::string_view coeff_text = view.substr(0, sep);
        const std::string_view ops_text = detail::trim(view.substr(sep));
        if (ops_text.find_first_of(" \t") != std::string_view::npos) {
            fail(ErrorCode::Parse, "trailing tokens" + where);
        }
        double coefficient = 0.0;
        const auto *first = coeff_text.data();
        const auto *last = first + coeff_text.size();
        if (*first == '+') {
            ++first;
        }
        const auto [ptr, ec] = std::from_chars(first, last, coefficient);
        if (ec != std::errc{} || ptr != last || !std::isfinite(coefficient)) {
            fail(ErrorCode::Parse, "malformed coefficient '" +
                                       std::string(coeff_text) + "'" + where);
        }
        for (char c : ops_text) {
            if (!PauliString::is_pauli_char(c)) {
                fail(ErrorCode::Parse, "invalid Pauli symbol '" +
                                           std::string(1, c) + "'" + where);
            }
        }
        if (!sized) {
            h = PauliTermHamiltonian(ops_text.size());
            sized = true;
        } else if (ops_text.size() != h.n_qubits()) {
            fail(ErrorCode::Shape,
                 "Pauli string length " + std::to_string(ops_text.size()) +
                     " differs from " + std::to_string(h.n_qubits()) + where);
        }
        h.add(coefficient, PauliString(std::string(ops_text)));
    }
    h.canonicalize();
    return h;
}

inline PauliTermHamiltonian parse_hamiltonian(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_hamiltonian(in);
}

inline PauliTermHamiltonian
load_hamiltonian_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open Hamiltonian file " + path.string());
    }
    return parse_hamiltonian(in);
}

} // namespace noisescramble
