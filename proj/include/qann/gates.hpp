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
 * Single-neuron unitaries: the four-angle U(2) parametrization, the fixed
 * gates used by the synaptic constructions, and their application to
 * state vectors.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qstate.hpp"

namespace qann {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/**
 * Angles (phi0, phi1, phi2, phi3) of one U(2) element.
 *
 * phi0 is the global U(1) phase, phi1/phi2 the diagonal and off-diagonal
 * phases, phi3 the mixing angle entering as phi3/4. Values inside [0, 2pi]
 * are kept as given (2pi stays 2pi, which matters for the quarter angle);
 * values outside are reduced mod 2pi.
 */
class GateParams {
  public:
    GateParams() = default;
    GateParams(double phi0, double phi1, double phi2, double phi3)
        : phi_{reduce(phi0), reduce(phi1), reduce(phi2), reduce(phi3)} {}
    explicit GateParams(const std::array<double, 4> &phi)
        : GateParams(phi[0], phi[1], phi[2], phi[3]) {}

    [[nodiscard]] auto operator[](std::size_t k) const -> double {
        return phi_[k];
    }
    [[nodiscard]] auto angles() const -> const std::array<double, 4> & {
        return phi_;
    }

    auto operator==(const GateParams &) const -> bool = default;

  private:
    static auto reduce(double x) -> double {
        if (!std::isfinite(x)) {
            throw ArgumentError("gate angle must be finite");
        }
        if (x >= 0.0 && x <= kTwoPi) {
            return x;
        }
        x = std::fmod(x, kTwoPi);
        return x < 0.0 ? x + kTwoPi : x;
    }

    std::array<double, 4> phi_{0.0, 0.0, 0.0, 0.0};
};

/// Parameters that produce the identity and NOT gates exactly.
inline auto identity_params() -> GateParams { return {0.0, 0.0, 0.0, 0.0}; }
inline auto not_params() -> GateParams {
    using std::numbers::pi;
    return {pi / 2, 0.0, 3 * pi / 2, kTwoPi};
}
inline auto hadamard_params() -> GateParams {
    using std::numbers::pi;
    return {pi / 2, 3 * pi / 2, 3 * pi / 2, pi};
}

using Unitary2 = Eigen::Matrix2cd;

/// Frobenius norm of U^+ U - I.
inline auto unitarity_error(const Unitary2 &u) -> double {
    return (u.adjoint() * u - Unitary2::Identity()).norm();
}

inline auto u2_from_params(const GateParams &phi) -> Unitary2 {
    const double c = std::cos(phi[3] / 4.0);
    const double s = std::sin(phi[3] / 4.0);
    const auto e = [](double angle) { return std::polar(1.0, angle); };
    Unitary2 u;
    u(0, 0) = e(phi[0] + phi[1]) * c;
    u(0, 1) = e(phi[0] + phi[2]) * s;
    u(1, 0) = -e(phi[0] - phi[2]) * s;
    u(1, 1) = e(phi[0] - phi[1]) * c;
    return u;
}

/// Amplitudes of U_phi|0>: (e^{i(phi0+phi1)} cos(phi3/4), -e^{i(phi0-phi2)} sin(phi3/4)).
inline auto psi_amplitudes(const GateParams &phi) -> std::pair<Complex, Complex> {
    return {std::polar(std::cos(phi[3] / 4.0), phi[0] + phi[1]),
            -std::polar(std::sin(phi[3] / 4.0), phi[0] - phi[2])};
}

enum class FixedGate { Identity, Not, Hadamard };

inline auto fixed_gate(FixedGate name) -> Unitary2 {
    Unitary2 u;
    switch (name) {
    case FixedGate::Identity:
        u << 1.0, 0.0, 0.0, 1.0;
        break;
    case FixedGate::Not:
        u << 0.0, 1.0, 1.0, 0.0;
        break;
    case FixedGate::Hadamard: {
        const double r = 1.0 / std::sqrt(2.0);
        u << r, r, r, -r;
        break;
    }
    }
    return u;
}

namespace detail {

/// In-place 2x2 kernel on the target neuron of an n-qubit amplitude array.
template <typename T>
void apply_2x2(std::span<std::complex<T>> amps, std::size_t n_qubits,
               std::size_t target, const Eigen::Matrix<std::complex<T>, 2, 2> &u) {
    const auto mask = qubit_mask(target, n_qubits);
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
        if (k & mask) {
            continue;
        }
        const auto a0 = amps[k];
        const auto a1 = amps[k | mask];
        amps[k] = u(0, 0) * a0 + u(0, 1) * a1;
        amps[k | mask] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

} // namespace detail

/// Applies `gate` to neuron `target` (1-based), identity elsewhere.
inline auto apply_single(const StateVector &state, const Unitary2 &gate,
                         std::size_t target) -> StateVector {
    detail::check_qubit(target, state.n_qubits());
    std::vector<Complex> amps(state.amps().begin(), state.amps().end());
    detail::apply_2x2<double>(amps, state.n_qubits(), target, gate);
    return {state.n_qubits(), std::move(amps)};
}

} // namespace qann
