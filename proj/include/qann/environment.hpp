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
 * The environment register on the 4-torus [0, 2pi]^4.
 *
 * Eigenmodes of the free Laplacian are (1/4pi^2) exp(i n.phi) with energy
 * |n|^2; a packet evolves by the eigenphases exp(-i |n|^2 t). Tracing the
 * environment out of the joint environment-network state leaves the
 * network in
 *
 *     rho(t) = int d^4phi_1..d^4phi_m  prod_k |Psi_k(phi_k, t)|^2
 *              N_phi|0..0><0..0|N_phi^+
 *
 * for a product environment with one packet per input neuron.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <gsl/gsl_integration.h>

#include "gates.hpp"
#include "network.hpp"
#include "qstate.hpp"

namespace qann {

using ModeIndex = std::array<int, 4>;

inline constexpr int kDefaultNMax = 3;
inline constexpr std::size_t kDefaultGridPoints = 16;

/// 1/(4 pi^2), the eigenmode normalization on the 4-torus.
inline constexpr double kModeNorm =
    1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

inline auto energy(const ModeIndex &n) -> long long {
    long long e = 0;
    for (int k : n) {
        e += static_cast<long long>(k) * k;
    }
    return e;
}

inline auto eigenfunction(const ModeIndex &n, const GateParams &phi) -> Complex {
    double arg = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        arg += n[k] * phi[k];
    }
    return std::polar(kModeNorm, arg);
}

/// Truncated superposition of torus eigenmodes, sum |A_n|^2 = 1.
class WavePacket {
  public:
    WavePacket(std::map<ModeIndex, Complex> coefficients, int n_max)
        : coefficients_{std::move(coefficients)}, n_max_{n_max} {
        if (n_max_ < 0) {
            throw ArgumentError("truncation bound must be non-negative");
        }
        double norm2 = 0.0;
        for (const auto &[n, a] : coefficients_) {
            for (int k : n) {
                if (std::abs(k) > n_max_) {
                    throw ArgumentError("mode index exceeds truncation bound");
                }
            }
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw ArgumentError("non-finite packet coefficient");
            }
            norm2 += std::norm(a);
        }
        if (std::abs(norm2 - 1.0) > 1e-12) {
            throw ArgumentError("packet coefficients are not normalized");
        }
    }

    static auto normalized(std::map<ModeIndex, Complex> coefficients, int n_max)
        -> WavePacket {
        double norm2 = 0.0;
        for (const auto &[n, a] : coefficients) {
            norm2 += std::norm(a);
        }
        if (!(norm2 > 0.0)) {
            throw ArgumentError("packet has zero norm");
        }
        for (auto &[n, a] : coefficients) {
            a /= std::sqrt(norm2);
        }
        return {std::move(coefficients), n_max};
    }

    /// The constant ground mode A_(0,0,0,0) = 1.
    static auto uniform(int n_max = kDefaultNMax) -> WavePacket {
        return {{{ModeIndex{0, 0, 0, 0}, Complex{1.0, 0.0}}}, n_max};
    }

    [[nodiscard]] auto coefficients() const
        -> const std::map<ModeIndex, Complex> & {
        return coefficients_;
    }
    [[nodiscard]] auto n_max() const -> int { return n_max_; }

    /// A_n exp(-i lambda_n t).
    [[nodiscard]] auto evolved(double t) const -> std::map<ModeIndex, Complex> {
        auto out = coefficients_;
        for (auto &[n, a] : out) {
            a *= std::polar(1.0, -static_cast<double>(energy(n)) * t);
        }
        return out;
    }

  private:
    std::map<ModeIndex, Complex> coefficients_;
    int n_max_;
};

inline auto evaluate_packet(const WavePacket &packet, const GateParams &phi,
                            double t) -> Complex {
    Complex sum{0.0, 0.0};
    for (const auto &[n, a] : packet.coefficients()) {
        double arg = -static_cast<double>(energy(n)) * t;
        for (std::size_t k = 0; k < 4; ++k) {
            arg += n[k] * phi[k];
        }
        sum += a * std::polar(kModeNorm, arg);
    }
    return sum;
}

/**
 * Tensor-product quadrature over [0, 2pi]^4.
 *
 * phi0..phi2 use the uniform periodic rule with P nodes (spacing 2pi/P).
 * phi3 enters the gates through cos(phi3/4) and sin(phi3/4), which are not
 * 2pi-periodic, so that axis uses 2P-point Gauss-Legendre on [0, 2pi].
 */
class QuadratureGrid {
  public:
    explicit QuadratureGrid(std::size_t points_per_axis = kDefaultGridPoints)
        : p_{points_per_axis} {
        if (p_ < 2) {
            throw ArgumentError("quadrature needs at least 2 points per axis");
        }
        for (std::size_t j = 0; j < p_; ++j) {
            periodic_.push_back(kTwoPi * static_cast<double>(j) /
                                static_cast<double>(p_));
        }
        const auto q = 2 * p_;
        auto *table = gsl_integration_glfixed_table_alloc(q);
        if (table == nullptr) {
            throw std::runtime_error("Gauss-Legendre table allocation failed");
        }
        for (std::size_t j = 0; j < q; ++j) {
            double x = 0.0;
            double w = 0.0;
            gsl_integration_glfixed_point(0.0, kTwoPi, j, &x, &w, table);
            mixing_.push_back(x);
            mixing_weights_.push_back(w);
        }
        gsl_integration_glfixed_table_free(table);
    }

    [[nodiscard]] auto points_per_axis() const -> std::size_t { return p_; }
    [[nodiscard]] auto periodic_nodes() const -> std::span<const double> {
        return periodic_;
    }
    [[nodiscard]] auto periodic_weight() const -> double {
        return kTwoPi / static_cast<double>(p_);
    }
    [[nodiscard]] auto mixing_nodes() const -> std::span<const double> {
        return mixing_;
    }
    [[nodiscard]] auto mixing_weights() const -> std::span<const double> {
        return mixing_weights_;
    }
    [[nodiscard]] auto size() const -> std::size_t {
        return p_ * p_ * p_ * mixing_.size();
    }

    /// Node with flat index ((j0 * P + j1) * P + j2) * Q + j3.
    [[nodiscard]] auto node(std::size_t flat) const -> GateParams {
        const auto q = mixing_.size();
        const auto j3 = flat % q;
        flat /= q;
        const auto j2 = flat % p_;
        flat /= p_;
        const auto j1 = flat % p_;
        const auto j0 = flat / p_;
        return {periodic_[j0], periodic_[j1], periodic_[j2], mixing_[j3]};
    }

    [[nodiscard]] auto weight(std::size_t flat) const -> double {
        const auto w = periodic_weight();
        return w * w * w * mixing_weights_[flat % mixing_.size()];
    }

  private:
    std::size_t p_;
    std::vector<double> periodic_;
    std::vector<double> mixing_;
    std::vector<double> mixing_weights_;
};

/**
 * Psi(phi, t) at every grid node, flat-indexed as QuadratureGrid::node.
 *
 * The mode sum separates per axis, so it is contracted one axis at a time.
 */
inline auto evaluate_on_grid(const WavePacket &packet, double t,
                             const QuadratureGrid &grid) -> std::vector<Complex> {
    const int nm = packet.n_max();
    const auto width = static_cast<std::size_t>(2 * nm + 1);
    const auto p = grid.points_per_axis();
    const auto q = grid.mixing_nodes().size();
    const std::array<std::size_t, 4> len{p, p, p, q};

    // phase[k][i * len[k] + j] = exp(i (i - nm) x_j) on axis k
    std::array<std::vector<Complex>, 4> phase;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto nodes = k < 3 ? grid.periodic_nodes() : grid.mixing_nodes();
        phase[k].resize(width * len[k]);
        for (std::size_t i = 0; i < width; ++i) {
            for (std::size_t j = 0; j < len[k]; ++j) {
                phase[k][i * len[k] + j] =
                    std::polar(1.0, (static_cast<double>(i) - nm) * nodes[j]);
            }
        }
    }

    // Dense coefficient block indexed [n0][n1][n2][n3] (offset by nm).
    std::vector<Complex> cur(width * width * width * width);
    for (const auto &[n, a] : packet.evolved(t)) {
        std::size_t idx = 0;
        for (int k : n) {
            idx = idx * width + static_cast<std::size_t>(k + nm);
        }
        cur[idx] = a * kModeNorm;
    }

    // Contract the leading mode axis into the trailing node axis, cycling
    // through phi0..phi3. After four passes the layout is [j0][j1][j2][j3].
    std::array<std::size_t, 4> shape{width, width, width, width};
    for (std::size_t k = 0; k < 4; ++k) {
        const auto rest = shape[1] * shape[2] * shape[3];
        std::vector<Complex> next(rest * len[k]);
        for (std::size_t r = 0; r < rest; ++r) {
            for (std::size_t j = 0; j < len[k]; ++j) {
                Complex s{0.0, 0.0};
                for (std::size_t i = 0; i < width; ++i) {
                    s += cur[i * rest + r] * phase[k][i * len[k] + j];
                }
                next[r * len[k] + j] = s;
            }
        }
        cur = std::move(next);
        shape = {shape[1], shape[2], shape[3], len[k]};
    }
    return cur;
}

/// Grid approximation of the integral of |Psi(phi, t)|^2 over the torus.
inline auto packet_norm_on_grid(const WavePacket &packet, double t,
                                const QuadratureGrid &grid) -> double {
    const auto values = evaluate_on_grid(packet, t, grid);
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += grid.weight(i) * std::norm(values[i]);
    }
    return s;
}

namespace detail {

/**
 * Sums f(i) for i in [0, count) with per-thread partial sums that are
 * merged once at the end. `zero` seeds every partial sum.
 */
template <typename T, typename F>
auto parallel_sum(std::size_t count, const T &zero, F &&f) -> T {
    const auto threads = static_cast<std::size_t>(
        std::max(1U, std::min(std::thread::hardware_concurrency(), 16U)));
    std::vector<T> partial(threads, zero);
    {
        std::vector<std::jthread> pool;
        const auto chunk = (count + threads - 1) / threads;
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                const auto lo = w * chunk;
                const auto hi = std::min(count, lo + chunk);
                for (std::size_t i = lo; i < hi; ++i) {
                    partial[w] += f(i);
                }
            });
        }
    }
    T total = zero;
    for (const auto &p : partial) {
        total += p;
    }
    return total;
}

/// Environment-averaged |psi_phi><psi_phi| of one input neuron.
inline auto averaged_input_state(const WavePacket &packet, double t,
                                 const QuadratureGrid &grid) -> Eigen::Matrix2cd {
    const auto values = evaluate_on_grid(packet, t, grid);
    Eigen::Matrix2cd sigma =
        parallel_sum(grid.size(), Eigen::Matrix2cd::Zero().eval(),
                     [&](std::size_t i) -> Eigen::Matrix2cd {
                         const auto [a0, a1] = psi_amplitudes(grid.node(i));
                         const double w = grid.weight(i) * std::norm(values[i]);
                         Eigen::Matrix2cd m;
                         m << std::norm(a0), a0 * std::conj(a1),
                             a1 * std::conj(a0), std::norm(a1);
                         return w * m;
                     });
    return sigma / sigma.trace().real();
}

} // namespace detail

/**
 * Network density matrix at time t with the environment traced out.
 *
 * The environment is a product of one packet per input neuron and the
 * synaptic steps do not depend on phi, so the integral factorizes: each
 * input neuron is replaced by its averaged 2x2 state, the resulting product
 * mixture is expanded into its eigen-branches and each branch is pushed
 * through the steps. This equals the node-by-node sum over the product grid.
 */
inline auto averaged_density(const NetworkConfig &cfg,
                             std::span<const WavePacket> packets, double t,
                             const QuadratureGrid &grid) -> DensityMatrix {
    if (packets.size() != cfg.inputs.size()) {
        throw ConfigurationError("need one packet per input neuron (" +
                                 std::to_string(cfg.inputs.size()) + "), got " +
                                 std::to_string(packets.size()));
    }
    const auto n = cfg.net.n_neurons();
    try {
        detail::check_distinct(cfg.inputs, n);
    } catch (const ArgumentError &e) {
        throw ConfigurationError(std::string("input neurons: ") + e.what());
    }

    struct Branch1 {
        double p;
        Eigen::Vector2cd v;
    };
    std::vector<std::vector<Branch1>> per_input;
    for (const auto &packet : packets) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(
            detail::averaged_input_state(packet, t, grid));
        std::vector<Branch1> b;
        for (Eigen::Index i = 0; i < 2; ++i) {
            b.push_back({std::max(0.0, solver.eigenvalues()(i)),
                         solver.eigenvectors().col(i)});
        }
        per_input.push_back(std::move(b));
    }

    const auto dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    const auto m = cfg.inputs.size();
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << m); ++choice) {
        double p = 1.0;
        std::vector<Complex> amps(static_cast<std::size_t>(dim));
        amps[0] = 1.0;
        for (std::size_t k = 0; k < m; ++k) {
            const auto &br = per_input[k][(choice >> k) & 1U];
            p *= br.p;
            // Rotate |0> into br.v on this neuron: any unitary with first
            // column v does it.
            Unitary2 u;
            u << br.v(0), -std::conj(br.v(1)), br.v(1), std::conj(br.v(0));
            detail::apply_2x2<double>(amps, n, cfg.inputs[k], u);
        }
        if (p <= 0.0) {
            continue;
        }
        const auto out = apply_steps(cfg.net, StateVector{n, std::move(amps)});
        Eigen::Map<const Eigen::VectorXcd> v(out.amps().data(), dim);
        rho += p * (v * v.adjoint());
    }
    rho /= rho.trace().real();
    return {n, rho};
}

/**
 * Node-by-node evaluation of the same integral for single-input networks.
 * Slow; kept as a cross-check of the factorized route.
 */
inline auto averaged_density_direct(const NetworkConfig &cfg,
                                    const WavePacket &packet, double t,
                                    const QuadratureGrid &grid) -> DensityMatrix {
    if (cfg.inputs.size() != 1) {
        throw ConfigurationError("direct averaging supports one input neuron");
    }
    const auto n = cfg.net.n_neurons();
    const auto dim = Eigen::Index{1} << n;
    const auto values = evaluate_on_grid(packet, t, grid);
    Eigen::MatrixXcd rho = detail::parallel_sum(
        grid.size(), Eigen::MatrixXcd::Zero(dim, dim).eval(),
        [&](std::size_t i) -> Eigen::MatrixXcd {
            const std::array<GateParams, 1> phis{grid.node(i)};
            const auto s = run_history(cfg, phis);
            Eigen::Map<const Eigen::VectorXcd> v(s.amps().data(), dim);
            return (grid.weight(i) * std::norm(values[i])) * (v * v.adjoint());
        });
    rho /= rho.trace().real();
    return {n, rho};
}

inline auto purity(const DensityMatrix &rho) -> double {
    return (rho.entries * rho.entries).trace().real();
}

/**
 * Parses `n0 n1 n2 n3 re im` lines (`#` comments). Modes beyond `n_max`
 * are rejected. Coefficients are renormalized; if the input norm is off by
 * more than 1e-6 a warning goes to `warn`.
 */
inline auto parse_packet(std::string_view text, int n_max = kDefaultNMax,
                         std::ostream *warn = nullptr) -> WavePacket {
    std::map<ModeIndex, Complex> coeffs;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        ModeIndex n{};
        double re = 0.0;
        double im = 0.0;
        if (!(fields >> std::ws) || fields.eof()) {
            continue;
        }
        if (!(fields >> n[0] >> n[1] >> n[2] >> n[3] >> re >> im)) {
            throw ParseError("expected 'n0 n1 n2 n3 re im'", line_no);
        }
        std::string extra;
        if (fields >> extra) {
            throw ParseError("trailing tokens after coefficient", line_no);
        }
        for (int k : n) {
            if (std::abs(k) > n_max) {
                throw ParseError("mode index exceeds truncation bound " +
                                     std::to_string(n_max),
                                 line_no);
            }
        }
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw ParseError("non-finite coefficient", line_no);
        }
        if (!coeffs.emplace(n, Complex{re, im}).second) {
            throw ParseError("duplicate mode", line_no);
        }
    }
    double norm2 = 0.0;
    for (const auto &[k, a] : coeffs) {
        norm2 += std::norm(a);
    }
    if (!(norm2 > 0.0)) {
        throw ParseError("packet has zero norm");
    }
    if (warn != nullptr && std::abs(std::sqrt(norm2) - 1.0) > 1e-6) {
        *warn << "warning: packet norm " << std::sqrt(norm2)
              << " renormalized to 1\n";
    }
    return WavePacket::normalized(std::move(coeffs), n_max);
}

} // namespace qann
