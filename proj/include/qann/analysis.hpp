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
 * Scenario checks over the reference networks and CSV reporting.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "boolfn.hpp"
#include "environment.hpp"
#include "gates.hpp"
#include "network.hpp"
#include "qstate.hpp"

namespace qann {

struct AssertionRecord {
    std::string description;
    double expected = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<AssertionRecord> records;

    /// Records |expected - observed| <= tolerance.
    void check(std::string description, double expected, double observed,
               double tolerance) {
        const bool pass = std::abs(expected - observed) <= tolerance;
        records.push_back(
            {std::move(description), expected, observed, tolerance, pass});
    }

    /// Records observed <= bound as expected 0 with tolerance `bound`.
    void check_below(std::string description, double observed, double bound) {
        check(std::move(description), 0.0, observed, bound);
    }

    [[nodiscard]] auto passed() const -> std::size_t {
        return static_cast<std::size_t>(std::count_if(
            records.begin(), records.end(),
            [](const AssertionRecord &r) { return r.pass; }));
    }
    [[nodiscard]] auto failed() const -> std::size_t {
        return records.size() - passed();
    }
    [[nodiscard]] auto all_passed() const -> bool { return failed() == 0; }

    void append(const ScenarioReport &other) {
        records.insert(records.end(), other.records.begin(),
                       other.records.end());
    }
};

namespace detail {

inline auto csv_escape(const std::string &s) -> std::string {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

inline auto fmt(double x) -> std::string {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << x;
    return os.str();
}

inline auto phi_label(const GateParams &phi) -> std::string {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17) << "phi=(" << phi[0] << ' ' << phi[1] << ' '
       << phi[2] << ' ' << phi[3] << ')';
    return os.str();
}

} // namespace detail

inline void write_csv(std::ostream &os, const ScenarioReport &report) {
    os << "scenario,assertion,expected,observed,tolerance,pass\n";
    for (const auto &r : report.records) {
        os << detail::csv_escape(report.scenario) << ','
           << detail::csv_escape(r.description) << ',' << detail::fmt(r.expected)
           << ',' << detail::fmt(r.observed) << ',' << detail::fmt(r.tolerance)
           << ',' << (r.pass ? "true" : "false") << '\n';
    }
}

/// Reproducible uniform draws over [0, 2pi]^4.
class PhiSampler {
  public:
    explicit PhiSampler(std::uint64_t seed) : rng_{seed} {}

    auto operator()() -> GateParams {
        std::uniform_real_distribution<double> u(0.0, kTwoPi);
        std::array<double, 4> a{};
        for (auto &x : a) {
            x = u(rng_);
        }
        return GateParams{a};
    }

  private:
    std::mt19937_64 rng_;
};

/// Builds sum_k c_k |bits_k> from explicit components.
inline auto ket(std::size_t n_qubits,
                std::initializer_list<std::pair<std::string_view, Complex>> terms)
    -> StateVector {
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    for (const auto &[bits, c] : terms) {
        const auto b = basis_state(n_qubits, bits);
        for (std::size_t k = 0; k < b.dim(); ++k) {
            amps[k] += c * b[k];
        }
    }
    return StateVector::normalized(n_qubits, std::move(amps));
}

/**
 * Output kets of the two-neuron network for the four one-input functions:
 * psi0|00>+psi1|10>, psi0|00>+psi1|11>, psi0|01>+psi1|10>, psi0|01>+psi1|11>.
 */
inline auto table2_check(const GateParams &phi) -> ScenarioReport {
    ScenarioReport report{"table2", {}};
    const auto [a0, a1] = psi_amplitudes(phi);
    const std::array<StateVector, 4> expected{
        ket(2, {{"00", a0}, {"10", a1}}), ket(2, {{"00", a0}, {"11", a1}}),
        ket(2, {{"01", a0}, {"10", a1}}), ket(2, {{"01", a0}, {"11", a1}})};
    const std::array<const char *, 4> names{"g(s)=0", "g(s)=s", "g(s)=1-s",
                                            "g(s)=1"};
    const auto fns = networks::unary_functions();
    const std::array<GateParams, 1> phis{phi};
    for (std::size_t row = 0; row < 4; ++row) {
        const auto out = run_history(networks::two_neuron(fns[row]), phis);
        report.check_below(std::string(names[row]) + " output ket " +
                               detail::phi_label(phi),
                           max_abs_diff(out, expected[row]), 1e-12);
    }
    return report;
}

/// The four one-input functions verified on two-neuron networks.
inline auto table1_check() -> ScenarioReport {
    ScenarioReport report{"table1", {}};
    const std::array<const char *, 4> names{"g(s)=0", "g(s)=s", "g(s)=1-s",
                                            "g(s)=1"};
    const auto fns = networks::unary_functions();
    for (std::size_t row = 0; row < 4; ++row) {
        const auto net = boolean_network_for(fns[row]);
        for (const auto &e : verify_truth_table(net, fns[row]).entries) {
            report.check(std::string(names[row]) + " s=" + e.input + " -> " +
                             e.expected,
                         1.0, e.probability, 1e-10);
        }
    }
    return report;
}

/**
 * Exhaustive {0,1}^2->{0,1} and {0,1}^3->{0,1}, plus `samples` seeded
 * random {0,1}^3->{0,1}^3 functions: truth tables and m+n structure.
 */
inline auto boolean_mn_check(std::size_t samples, std::uint64_t seed)
    -> ScenarioReport {
    ScenarioReport report{"boolean-mn", {}};
    const auto run = [&](const BooleanFunction &g, const std::string &label) {
        const auto net = boolean_network_for(g);
        const auto tt = verify_truth_table(net, g);
        double worst = 1.0;
        for (const auto &e : tt.entries) {
            worst = std::min(worst, e.probability);
        }
        report.check(label + " min output probability", 1.0, worst, 1e-10);
        report.check(label + " neurons", static_cast<double>(g.m() + g.n()),
                     static_cast<double>(net.n_neurons()), 0.0);
        report.check(label + " hidden neurons", 0.0,
                     static_cast<double>(net.hidden_neurons()), 0.0);
    };
    for (std::uint64_t code = 0; code < 16; ++code) {
        std::vector<std::uint64_t> t(4);
        for (std::size_t s = 0; s < 4; ++s) {
            t[s] = (code >> s) & 1U;
        }
        run(BooleanFunction{2, 1, t}, "m=2 n=1 #" + std::to_string(code));
    }
    for (std::uint64_t code = 0; code < 256; ++code) {
        std::vector<std::uint64_t> t(8);
        for (std::size_t s = 0; s < 8; ++s) {
            t[s] = (code >> s) & 1U;
        }
        run(BooleanFunction{3, 1, t}, "m=3 n=1 #" + std::to_string(code));
    }
    std::mt19937_64 rng{seed};
    std::uniform_int_distribution<std::uint64_t> out(0, 7);
    for (std::size_t i = 0; i < samples; ++i) {
        std::vector<std::uint64_t> t(8);
        for (auto &x : t) {
            x = out(rng);
        }
        run(BooleanFunction{3, 3, t}, "m=3 n=3 random #" + std::to_string(i));
    }
    return report;
}

/// Probability mass of `state` on basis strings whose listed neurons read
/// one of `patterns` (MSB-first over `neurons`).
inline auto mass_on(const StateVector &state, std::span<const std::size_t> neurons,
                    std::span<const std::uint64_t> patterns) -> double {
    const auto n = state.n_qubits();
    double p = 0.0;
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        std::uint64_t read = 0;
        for (auto q : neurons) {
            read = (read << 1) |
                   ((k & detail::qubit_mask(q, n)) ? std::uint64_t{1} : 0);
        }
        if (std::find(patterns.begin(), patterns.end(), read) != patterns.end()) {
            p += std::norm(state[k]);
        }
    }
    return p;
}

/// Normalized state of `neuron` given the other neurons read `rest`
/// (bit string over the remaining neurons in index order).
inline auto conditional_neuron_state(const StateVector &state, std::size_t neuron,
                                     std::string_view rest) -> StateVector {
    const auto n = state.n_qubits();
    detail::check_qubit(neuron, n);
    if (rest.size() != n - 1) {
        throw ArgumentError("conditioning string has wrong length");
    }
    std::string bits;
    std::size_t r = 0;
    for (std::size_t q = 1; q <= n; ++q) {
        bits += (q == neuron) ? '0' : rest[r++];
    }
    const auto k0 = BooleanFunction::parse_bits(bits);
    const auto k1 = k0 | detail::qubit_mask(neuron, n);
    return StateVector::normalized(1, {state[k0], state[k1]});
}

inline auto plus_state() -> StateVector {
    const double r = 1.0 / std::sqrt(2.0);
    return {1, {r, r}};
}
inline auto minus_state() -> StateVector {
    const double r = 1.0 / std::sqrt(2.0);
    return {1, {r, -r}};
}

/// N4 always fires and the middle layer only shows 01 or 10.
inline auto xor_reflexivity_check(std::size_t samples, std::uint64_t seed)
    -> ScenarioReport {
    ScenarioReport report{"xor", {}};
    if (samples < 1) {
        throw ArgumentError("samples must be >= 1");
    }
    const auto cfg = networks::xor_network();
    PhiSampler sample{seed};
    const std::array<std::size_t, 2> middle{2, 3};
    const std::array<std::uint64_t, 2> mixed{0b01, 0b10};
    for (std::size_t i = 0; i < samples; ++i) {
        const std::array<GateParams, 1> phis{sample()};
        const auto label = "seed=" + std::to_string(seed) + " #" +
                           std::to_string(i) + ' ' + detail::phi_label(phis[0]);
        const auto state = run_history(cfg, phis);
        const auto [a0, a1] = psi_amplitudes(phis[0]);
        report.check("P(N4 fires) " + label, 1.0,
                     measure_probabilities(state, 4, Basis::Computational).second,
                     1e-10);
        report.check("middle-layer mass on {01,10} " + label, 1.0,
                     mass_on(state, middle, mixed), 1e-10);
        report.check_below(
            "state vs psi0|0;01;1>+psi1|1;10;1> " + label,
            max_abs_diff(state, ket(4, {{"0;01;1", a0}, {"1;10;1", a1}})), 1e-12);
    }
    return report;
}

/// U_H U_h on N4: branch states |+> and |->, N4 fires with probability 1/2.
inline auto hadamard_variant_check(const GateParams &phi) -> ScenarioReport {
    ScenarioReport report{"hadamard-variant", {}};
    const auto label = detail::phi_label(phi);
    const std::array<GateParams, 1> phis{phi};
    const auto state = run_history(networks::hadamard_variant_network(), phis);
    const auto [a0, a1] = psi_amplitudes(phi);
    const double r = 1.0 / std::sqrt(2.0);
    const auto expected = ket(4, {{"0;01;0", a0 * r},
                                  {"0;01;1", a0 * r},
                                  {"1;10;0", a1 * r},
                                  {"1;10;1", -a1 * r}});
    report.check_below("state vs psi0|0;01>|+>+psi1|1;10>|-> " + label,
                       max_abs_diff(state, expected), 1e-12);
    report.check("P(N4 fires) " + label, 0.5,
                 measure_probabilities(state, 4, Basis::Computational).second,
                 1e-10);
    if (std::norm(a0) > 1e-12) {
        report.check("fidelity(N4 | 0;01, |+>) " + label, 1.0,
                     fidelity(conditional_neuron_state(state, 4, "001"),
                              plus_state()),
                     1e-10);
    }
    if (std::norm(a1) > 1e-12) {
        report.check("fidelity(N4 | 1;10, |->) " + label, 1.0,
                     fidelity(conditional_neuron_state(state, 4, "110"),
                              minus_state()),
                     1e-10);
    }
    return report;
}

/**
 * Two-neuron complementarity: input computational and output PlusMinus
 * are perfectly correlated while the output has no definite firing value.
 */
inline auto complementarity_check(const GateParams &phi) -> ScenarioReport {
    ScenarioReport report{"complementarity", {}};
    const auto label = detail::phi_label(phi);
    const std::array<GateParams, 1> phis{phi};
    const auto state = run_history(networks::complementarity_network(), phis);
    const auto [a0, a1] = psi_amplitudes(phi);

    const std::array<std::pair<std::size_t, Basis>, 2> readout{
        std::pair{std::size_t{1}, Basis::Computational},
        std::pair{std::size_t{2}, Basis::PlusMinus}};
    const auto joint = joint_probabilities(state, readout);
    report.check("P(0,+) " + label, std::norm(a0), joint[0], 1e-10);
    report.check_below("P(0,-) " + label, joint[1], 1e-10);
    report.check_below("P(1,+) " + label, joint[2], 1e-10);
    report.check("P(1,-) " + label, std::norm(a1), joint[3], 1e-10);

    const auto [p0, p1] = measure_probabilities(state, 2, Basis::Computational);
    report.check("P(N2 silent) " + label, 0.5, p0, 1e-10);
    report.check("P(N2 fires) " + label, 0.5, p1, 1e-10);

    if (std::norm(a0) > 1e-12) {
        report.check("fidelity(N2 | N1=0, |+>) " + label, 1.0,
                     fidelity(conditional_neuron_state(state, 2, "0"),
                              plus_state()),
                     1e-10);
    }
    if (std::norm(a1) > 1e-12) {
        report.check("fidelity(N2 | N1=1, |->) " + label, 1.0,
                     fidelity(conditional_neuron_state(state, 2, "1"),
                              minus_state()),
                     1e-10);
    }
    return report;
}

inline auto entanglement_report(const StateVector &state,
                                std::span<const std::size_t> partition) -> double {
    return von_neumann_entropy(reduced_density(state, partition));
}

inline auto entanglement_report(const StateVector &state,
                                std::initializer_list<std::size_t> partition)
    -> double {
    return von_neumann_entropy(reduced_density(state, partition));
}

namespace detail {

/// Composite Simpson rule with an even number of intervals.
template <typename F>
auto simpson(F &&f, double a, double b, std::size_t intervals) -> double {
    intervals += intervals % 2;
    const double h = (b - a) / static_cast<double>(intervals);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < intervals; ++i) {
        s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

} // namespace detail

/**
 * Environment-averaged CNOT(1) network at each time: support on {00, 11},
 * density-matrix invariants, agreement with the node-by-node route, and,
 * for the ground-mode packet, the diagonal against the 1-D marginals of
 * cos^2(phi3/4) and sin^2(phi3/4).
 */
inline auto averaged_dynamics_check(const WavePacket &packet,
                                    std::span<const double> times,
                                    const QuadratureGrid &grid) -> ScenarioReport {
    ScenarioReport report{"averaged-dynamics", {}};
    const auto cfg = networks::two_neuron(networks::unary_functions()[1]);
    const std::array<WavePacket, 1> packets{packet};
    const bool ground = packet.coefficients().size() == 1 &&
                        packet.coefficients().begin()->first == ModeIndex{0, 0, 0, 0};
    const double marginal_cos =
        detail::simpson([](double x) { return std::pow(std::cos(x / 4), 2); },
                        0.0, kTwoPi, 20000) /
        kTwoPi;
    std::optional<DensityMatrix> first;
    for (double t : times) {
        const auto label = "t=" + detail::fmt(t);
        const auto rho = averaged_density(cfg, packets, t, grid);
        const auto &e = rho.entries;
        report.check("trace " + label, 1.0, rho.trace().real(), 1e-9);
        report.check_below("hermiticity error " + label, rho.hermiticity_error(),
                           1e-10);
        report.check_below("negative eigenvalue " + label,
                           std::max(0.0, -rho.eigenvalues().minCoeff()), 1e-9);
        double off = 0.0;
        for (Eigen::Index i = 0; i < 4; ++i) {
            for (Eigen::Index j = 0; j < 4; ++j) {
                const bool on = (i == 0 || i == 3) && (j == 0 || j == 3);
                if (!on) {
                    off += std::abs(e(i, j));
                }
            }
        }
        report.check_below("mass off {00,11} " + label, off, 1e-9);
        const auto direct = averaged_density_direct(cfg, packet, t, grid);
        report.check_below("factorized vs node-by-node " + label,
                           (direct.entries - e).cwiseAbs().maxCoeff(), 1e-10);
        report.check("purity in (0,1] " + label, 1.0,
                     purity(rho) > 0.0 && purity(rho) <= 1.0 + 1e-12 ? 1.0 : 0.0,
                     0.0);
        if (ground) {
            report.check("rho_00 vs 1-D marginal " + label, marginal_cos,
                         e(0, 0).real(), 1e-6);
            report.check("rho_11 vs 1-D marginal " + label, 1.0 - marginal_cos,
                         e(3, 3).real(), 1e-6);
        }
        if (packet.coefficients().size() == 1) {
            if (!first) {
                first = rho;
            }
            report.check_below("single-mode t-invariance " + label,
                               (first->entries - e).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
    return report;
}

} // namespace qann
