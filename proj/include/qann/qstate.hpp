// Copyright 2026 The qann Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Dense state vectors and density matrices over the computational basis
 * of an N-neuron network.
 *
 * Neurons are numbered from 1. Neuron 1 is the most significant bit of a
 * basis index, so the ket |s1 s2 ... sN> has index s1*2^(N-1) + ... + sN.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace qann {

using Complex = std::complex<double>;

/// Default neuron cap for networks (dense vectors of 2^24 amplitudes).
inline constexpr std::size_t kDefaultMaxQubits = 24;
/// Absolute ceiling on state-vector width.
inline constexpr std::size_t kHardMaxQubits = 30;

inline constexpr double kNormTolerance = 1e-10;

enum class Basis { Computational, PlusMinus };

namespace detail {

inline void check_qubit(std::size_t qubit, std::size_t n_qubits) {
    if (qubit < 1 || qubit > n_qubits) {
        throw ArgumentError("qubit index " + std::to_string(qubit) +
                            " outside 1.." + std::to_string(n_qubits));
    }
}

/// Bit mask of a 1-based qubit in an n-qubit basis index.
constexpr auto qubit_mask(std::size_t qubit, std::size_t n_qubits)
    -> std::uint64_t {
    return std::uint64_t{1} << (n_qubits - qubit);
}

inline void check_distinct(std::span<const std::size_t> qubits,
                           std::size_t n_qubits) {
    std::uint64_t seen = 0;
    for (auto q : qubits) {
        check_qubit(q, n_qubits);
        const auto mask = qubit_mask(q, n_qubits);
        if (seen & mask) {
            throw ArgumentError("qubit " + std::to_string(q) +
                                " listed more than once");
        }
        seen |= mask;
    }
}

} // namespace detail

/**
 * Normalized complex amplitude vector of length 2^n.
 *
 * Construction validates length, finiteness and unit norm; every public
 * operation in the library returns a fresh, validated StateVector.
 */
class StateVector {
  public:
    StateVector(std::size_t n_qubits, std::vector<Complex> amps)
        : n_qubits_{n_qubits}, amps_{std::move(amps)} {
        if (n_qubits_ == 0 || n_qubits_ > kHardMaxQubits) {
            throw ArgumentError("qubit count must be in 1.." +
                                std::to_string(kHardMaxQubits));
        }
        if (amps_.size() != (std::size_t{1} << n_qubits_)) {
            throw ArgumentError("amplitude array length must be 2^n_qubits");
        }
        for (const auto &a : amps_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw ArgumentError("non-finite amplitude");
            }
        }
        if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
            throw ArgumentError("state vector is not normalized");
        }
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    static auto normalized(std::size_t n_qubits, std::vector<Complex> amps)
        -> StateVector {
        double norm2 = 0.0;
        for (const auto &a : amps) {
            norm2 += std::norm(a);
        }
        if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
            throw ArgumentError("cannot normalize a zero or non-finite vector");
        }
        const double scale = 1.0 / std::sqrt(norm2);
        for (auto &a : amps) {
            a *= scale;
        }
        return {n_qubits, std::move(amps)};
    }

    [[nodiscard]] auto n_qubits() const -> std::size_t { return n_qubits_; }
    [[nodiscard]] auto dim() const -> std::size_t { return amps_.size(); }
    [[nodiscard]] auto amps() const -> std::span<const Complex> {
        return amps_;
    }
    [[nodiscard]] auto operator[](std::size_t k) const -> const Complex & {
        return amps_[k];
    }

    [[nodiscard]] auto norm_squared() const -> double {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

  private:
    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

/// Largest elementwise |a_k - b_k|; dimensions must agree.
inline auto max_abs_diff(const StateVector &a, const StateVector &b)
    -> double {
    if (a.dim() != b.dim()) {
        throw ArgumentError("state dimensions differ");
    }
    double d = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        d = std::max(d, std::abs(a[k] - b[k]));
    }
    return d;
}

/// |<a|b>|^2, insensitive to global phase.
inline auto fidelity(const StateVector &a, const StateVector &b) -> double {
    if (a.dim() != b.dim()) {
        throw ArgumentError("state dimensions differ");
    }
    Complex overlap{0.0, 0.0};
    for (std::size_t k = 0; k < a.dim(); ++k) {
        overlap += std::conj(a[k]) * b[k];
    }
    return std::norm(overlap);
}

/// Basis ket from a bit string. ';' and ' ' act as layer separators and
/// are skipped, so "0;00;0" names the four-neuron ket |0000>.
inline auto basis_state(std::size_t n_qubits, std::string_view bits)
    -> StateVector {
    std::uint64_t index = 0;
    std::size_t count = 0;
    for (char c : bits) {
        if (c == ';' || c == ' ') {
            continue;
        }
        if (c != '0' && c != '1') {
            throw ConfigurationError("basis string may only contain 0 and 1");
        }
        index = (index << 1) | static_cast<std::uint64_t>(c - '0');
        ++count;
    }
    if (count != n_qubits) {
        throw ConfigurationError("basis string has " + std::to_string(count) +
                                 " bits, expected " +
                                 std::to_string(n_qubits));
    }
    if (n_qubits == 0 || n_qubits > kHardMaxQubits) {
        throw ConfigurationError("qubit count out of range");
    }
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    amps[index] = 1.0;
    return {n_qubits, std::move(amps)};
}

/// MSB-first bit string of a basis index.
inline auto bits_of(std::uint64_t index, std::size_t n_qubits) -> std::string {
    std::string s(n_qubits, '0');
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (index & (std::uint64_t{1} << (n_qubits - 1 - q))) {
            s[q] = '1';
        }
    }
    return s;
}

/// a (x) b with a's qubits leading: amps[(i << b.n) + j] = a[i] * b[j].
inline auto tensor(const StateVector &a, const StateVector &b) -> StateVector {
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            amps[(i << b.n_qubits()) + j] = a[i] * b[j];
        }
    }
    return {a.n_qubits() + b.n_qubits(), std::move(amps)};
}

/// Density operator over n qubits, same index convention as StateVector.
struct DensityMatrix {
    std::size_t n_qubits = 0;
    Eigen::MatrixXcd entries;

    [[nodiscard]] auto dim() const -> std::size_t {
        return static_cast<std::size_t>(entries.rows());
    }
    [[nodiscard]] auto trace() const -> Complex { return entries.trace(); }

    /// Frobenius-max deviation from Hermiticity.
    [[nodiscard]] auto hermiticity_error() const -> double {
        return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    }

    [[nodiscard]] auto is_hermitian(double tol = 1e-10) const -> bool {
        return hermiticity_error() <= tol;
    }

    [[nodiscard]] auto eigenvalues() const -> Eigen::VectorXd {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
            entries, Eigen::EigenvaluesOnly);
        return solver.eigenvalues();
    }

    /// Hermitian, unit trace and positive semidefinite within tolerances.
    [[nodiscard]] auto is_valid(double tol = 1e-10,
                                double eig_tol = 1e-9) const -> bool {
        if (!is_hermitian(tol)) {
            return false;
        }
        if (std::abs(trace() - Complex{1.0, 0.0}) > tol) {
            return false;
        }
        return eigenvalues().minCoeff() >= -eig_tol;
    }

    static auto pure(const StateVector &s) -> DensityMatrix {
        Eigen::Map<const Eigen::VectorXcd> v(s.amps().data(),
                                             static_cast<Eigen::Index>(s.dim()));
        return {s.n_qubits(), v * v.adjoint()};
    }
};

/**
 * Partial trace keeping the listed qubits.
 *
 * Kept qubits appear in the result in ascending index order regardless of
 * the order in `keep`.
 */
inline auto reduced_density(const StateVector &state,
                            std::span<const std::size_t> keep)
    -> DensityMatrix {
    const auto n = state.n_qubits();
    if (keep.empty()) {
        throw ArgumentError("keep set must be nonempty");
    }
    detail::check_distinct(keep, n);

    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    std::vector<std::size_t> traced;
    for (std::size_t q = 1; q <= n; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) {
            traced.push_back(q);
        }
    }

    // Rows index the kept pattern, columns the traced pattern; rho = M M^+.
    const auto gather = [n](std::uint64_t index,
                            const std::vector<std::size_t> &qubits) {
        std::uint64_t out = 0;
        for (auto q : qubits) {
            out = (out << 1) |
                  ((index & detail::qubit_mask(q, n)) ? std::uint64_t{1} : 0);
        }
        return out;
    };
    const auto dk = Eigen::Index{1} << kept.size();
    const auto dr = Eigen::Index{1} << traced.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dk, dr);
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        m(static_cast<Eigen::Index>(gather(k, kept)),
          static_cast<Eigen::Index>(gather(k, traced))) = state[k];
    }
    return {kept.size(), m * m.adjoint()};
}

inline auto reduced_density(const StateVector &state,
                            std::initializer_list<std::size_t> keep)
    -> DensityMatrix {
    return reduced_density(state, std::span<const std::size_t>(keep.begin(),
                                                               keep.size()));
}

/**
 * Outcome probabilities of a single-neuron readout. For PlusMinus the
 * neuron is Hadamard-conjugated first, so p0 is the |+> outcome.
 */
inline auto measure_probabilities(const StateVector &state, std::size_t qubit,
                                  Basis basis) -> std::pair<double, double> {
    const auto n = state.n_qubits();
    detail::check_qubit(qubit, n);
    const auto mask = detail::qubit_mask(qubit, n);
    double p0 = 0.0;
    double p1 = 0.0;
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        if (k & mask) {
            continue;
        }
        const Complex a0 = state[k];
        const Complex a1 = state[k | mask];
        if (basis == Basis::Computational) {
            p0 += std::norm(a0);
            p1 += std::norm(a1);
        } else {
            p0 += 0.5 * std::norm(a0 + a1);
            p1 += 0.5 * std::norm(a0 - a1);
        }
    }
    return {p0, p1};
}

/**
 * Joint outcome distribution over several neurons, each read out in its own
 * basis. Result index is MSB-first over `readouts` in the given order.
 */
inline auto joint_probabilities(
    const StateVector &state,
    std::span<const std::pair<std::size_t, Basis>> readouts)
    -> std::vector<double> {
    const auto n = state.n_qubits();
    std::vector<std::size_t> qubits;
    for (const auto &[q, b] : readouts) {
        qubits.push_back(q);
    }
    detail::check_distinct(qubits, n);

    // Rotate PlusMinus neurons into the computational basis.
    std::vector<Complex> amps(state.amps().begin(), state.amps().end());
    const double r = 1.0 / std::sqrt(2.0);
    for (const auto &[q, b] : readouts) {
        if (b != Basis::PlusMinus) {
            continue;
        }
        const auto mask = detail::qubit_mask(q, n);
        for (std::uint64_t k = 0; k < amps.size(); ++k) {
            if (k & mask) {
                continue;
            }
            const Complex a0 = amps[k];
            const Complex a1 = amps[k | mask];
            amps[k] = r * (a0 + a1);
            amps[k | mask] = r * (a0 - a1);
        }
    }

    std::vector<double> probs(std::size_t{1} << readouts.size(), 0.0);
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
        std::size_t outcome = 0;
        for (auto q : qubits) {
            outcome = (outcome << 1) |
                      ((k & detail::qubit_mask(q, n)) ? std::size_t{1} : 0);
        }
        probs[outcome] += std::norm(amps[k]);
    }
    return probs;
}

/// -sum(l log2 l) over the spectrum; eigenvalues clamped into [0, 1].
inline auto von_neumann_entropy(const DensityMatrix &rho) -> double {
    if (!rho.is_hermitian(1e-10)) {
        throw ArgumentError("density matrix is not Hermitian");
    }
    double s = 0.0;
    for (double l : rho.eigenvalues()) {
        l = std::clamp(l, 0.0, 1.0);
        if (l > 0.0) {
            s -= l * std::log2(l);
        }
    }
    return s;
}

} // namespace qann
