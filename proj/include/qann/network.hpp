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
 * Quantum feedforward networks: architecture, history operator and
 * truth-table verification.
 *
 * A history for environment parameters (phi_1..phi_m) applies U_{phi_k} to
 * each input neuron of the all-non-firing state and then the network's
 * synaptic steps in order.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "boolfn.hpp"
#include "gates.hpp"
#include "qstate.hpp"

namespace qann {

/// One synaptic stage: a Boolean-controlled gate or a bank of single-neuron
/// unitaries applied after earlier stages.
struct SynapticStep {
    struct Boolean {
        BooleanFunction function;
        SynapticGate gate;
    };
    struct PostUnitary {
        std::vector<Unitary2> gates; // one per target
    };

    std::variant<Boolean, PostUnitary> kind;
    std::vector<std::size_t> controls;
    std::vector<std::size_t> targets;

    static auto boolean(const BooleanFunction &g,
                        std::vector<std::size_t> controls,
                        std::vector<std::size_t> targets) -> SynapticStep {
        return {Boolean{g, compile_synaptic(g)}, std::move(controls),
                std::move(targets)};
    }

    static auto post_unitary(const Unitary2 &u, std::vector<std::size_t> targets)
        -> SynapticStep {
        std::vector<Unitary2> gates(targets.size(), u);
        return {PostUnitary{std::move(gates)}, {}, std::move(targets)};
    }

    [[nodiscard]] auto is_boolean() const -> bool {
        return std::holds_alternative<Boolean>(kind);
    }
};

class NetworkSpec {
  public:
    NetworkSpec(std::vector<std::size_t> layers, std::vector<SynapticStep> steps,
                std::size_t max_neurons = kDefaultMaxQubits)
        : layers_{std::move(layers)}, steps_{std::move(steps)} {
        if (layers_.empty()) {
            throw ConfigurationError("network needs at least one layer");
        }
        for (auto size : layers_) {
            if (size == 0) {
                throw ConfigurationError("layers must be nonempty");
            }
        }
        n_ = std::accumulate(layers_.begin(), layers_.end(), std::size_t{0});
        if (n_ > std::min(max_neurons, kHardMaxQubits)) {
            throw ConfigurationError("network has " + std::to_string(n_) +
                                     " neurons, cap is " +
                                     std::to_string(max_neurons));
        }
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            validate(steps_[i], i + 1);
        }
    }

    [[nodiscard]] auto layers() const -> std::span<const std::size_t> {
        return layers_;
    }
    [[nodiscard]] auto steps() const -> std::span<const SynapticStep> {
        return steps_;
    }
    [[nodiscard]] auto n_neurons() const -> std::size_t { return n_; }

    /// 1-based neuron indices of layer `layer` (0-based).
    [[nodiscard]] auto layer_neurons(std::size_t layer) const
        -> std::vector<std::size_t> {
        const auto first =
            std::accumulate(layers_.begin(),
                            layers_.begin() + static_cast<std::ptrdiff_t>(layer),
                            std::size_t{0}) +
            1;
        std::vector<std::size_t> out(layers_.at(layer));
        std::iota(out.begin(), out.end(), first);
        return out;
    }

    /// Neurons outside the first and last layers.
    [[nodiscard]] auto hidden_neurons() const -> std::size_t {
        if (layers_.size() <= 2) {
            return 0;
        }
        return n_ - layers_.front() - layers_.back();
    }

  private:
    void validate(const SynapticStep &step, std::size_t index) const {
        const auto where = "step " + std::to_string(index) + ": ";
        std::vector<std::size_t> all = step.controls;
        all.insert(all.end(), step.targets.begin(), step.targets.end());
        try {
            detail::check_distinct(all, n_);
        } catch (const ArgumentError &e) {
            throw ConfigurationError(where + e.what());
        }
        if (step.targets.empty()) {
            throw ConfigurationError(where + "no target neurons");
        }
        if (const auto *b = std::get_if<SynapticStep::Boolean>(&step.kind)) {
            if (b->gate.m != step.controls.size() ||
                b->gate.n != step.targets.size()) {
                throw ConfigurationError(where +
                                         "truth-table arity does not match "
                                         "controls/targets");
            }
        } else {
            const auto &p = std::get<SynapticStep::PostUnitary>(step.kind);
            if (!step.controls.empty()) {
                throw ConfigurationError(where +
                                         "post_unitary steps take no controls");
            }
            if (p.gates.size() != step.targets.size()) {
                throw ConfigurationError(where + "one unitary per target required");
            }
            for (const auto &u : p.gates) {
                if (unitarity_error(u) > 1e-10) {
                    throw ConfigurationError(where + "gate is not unitary");
                }
            }
        }
    }

    std::vector<std::size_t> layers_;
    std::vector<SynapticStep> steps_;
    std::size_t n_ = 0;
};

/// A network together with the neurons that receive environment gates.
struct NetworkConfig {
    NetworkSpec net;
    std::vector<std::size_t> inputs;
};

/// Applies the network's steps, in order, to an arbitrary state.
inline auto apply_steps(const NetworkSpec &net, StateVector state)
    -> StateVector {
    if (state.n_qubits() != net.n_neurons()) {
        throw ConfigurationError("state width does not match network");
    }
    for (const auto &step : net.steps()) {
        if (const auto *b = std::get_if<SynapticStep::Boolean>(&step.kind)) {
            state = apply_synaptic(state, b->gate, step.controls, step.targets);
        } else {
            const auto &p = std::get<SynapticStep::PostUnitary>(step.kind);
            std::vector<Complex> amps(state.amps().begin(), state.amps().end());
            for (std::size_t i = 0; i < step.targets.size(); ++i) {
                detail::apply_2x2<double>(amps, state.n_qubits(), step.targets[i],
                                          p.gates[i]);
            }
            state = StateVector{state.n_qubits(), std::move(amps)};
        }
    }
    return state;
}

/// Single history N_phi |0...0>.
inline auto run_history(const NetworkSpec &net, std::span<const GateParams> phis,
                        std::span<const std::size_t> input_neurons)
    -> StateVector {
    if (phis.size() != input_neurons.size()) {
        throw ConfigurationError("got " + std::to_string(phis.size()) +
                                 " gate parameter sets for " +
                                 std::to_string(input_neurons.size()) +
                                 " input neurons");
    }
    const auto n = net.n_neurons();
    try {
        detail::check_distinct(input_neurons, n);
    } catch (const ArgumentError &e) {
        throw ConfigurationError(std::string("input neurons: ") + e.what());
    }
    std::vector<Complex> amps(std::size_t{1} << n);
    amps[0] = 1.0;
    for (std::size_t k = 0; k < phis.size(); ++k) {
        detail::apply_2x2<double>(amps, n, input_neurons[k],
                                  u2_from_params(phis[k]));
    }
    return apply_steps(net, StateVector{n, std::move(amps)});
}

inline auto run_history(const NetworkConfig &cfg, std::span<const GateParams> phis)
    -> StateVector {
    return run_history(cfg.net, phis, cfg.inputs);
}

struct Branch {
    std::string bits;
    Complex amplitude;
};

/// Basis components with |amplitude| > threshold, in index order.
inline auto branch_amplitudes(const StateVector &state, double threshold)
    -> std::vector<Branch> {
    if (!(threshold >= 0.0)) {
        throw ArgumentError("threshold must be non-negative");
    }
    std::vector<Branch> out;
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        if (std::abs(state[k]) > threshold) {
            out.push_back({bits_of(k, state.n_qubits()), state[k]});
        }
    }
    return out;
}

/// Two-layer network: m input neurons, n output neurons, one synaptic step.
inline auto boolean_network_for(const BooleanFunction &g) -> NetworkSpec {
    std::vector<std::size_t> controls(g.m());
    std::vector<std::size_t> targets(g.n());
    std::iota(controls.begin(), controls.end(), std::size_t{1});
    std::iota(targets.begin(), targets.end(), g.m() + 1);
    return NetworkSpec{{g.m(), g.n()},
                       {SynapticStep::boolean(g, std::move(controls),
                                              std::move(targets))},
                       kHardMaxQubits};
}

struct TruthTableReport {
    struct Entry {
        std::string input;
        std::string expected;
        double probability = 0.0; // of reading `expected` on the outputs
        bool pass = false;
    };
    std::vector<Entry> entries;

    [[nodiscard]] auto all_passed() const -> bool {
        return std::all_of(entries.begin(), entries.end(),
                           [](const Entry &e) { return e.pass; });
    }

    /// Throws VerificationFailure naming the first failing input.
    void require_pass() const {
        for (const auto &e : entries) {
            if (!e.pass) {
                throw VerificationFailure("input " + e.input + " does not yield " +
                                          e.expected + " (probability " +
                                          std::to_string(e.probability) + ")");
            }
        }
    }
};

/**
 * Drives every input string s through the network (input neurons prepared
 * with identity or NOT parameters) and checks that the output neurons read
 * g(s) with probability 1 within `tol`.
 */
inline auto verify_truth_table(const NetworkSpec &net, const BooleanFunction &g,
                               std::span<const std::size_t> inputs,
                               std::span<const std::size_t> outputs,
                               double tol = 1e-10) -> TruthTableReport {
    if (inputs.size() != g.m() || outputs.size() != g.n()) {
        throw ConfigurationError("network input/output widths do not match "
                                 "the Boolean function");
    }
    const auto n = net.n_neurons();
    TruthTableReport report;
    std::vector<GateParams> phis(g.m());
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.m()); ++s) {
        for (std::size_t k = 0; k < g.m(); ++k) {
            phis[k] = ((s >> (g.m() - 1 - k)) & 1U) ? not_params()
                                                     : identity_params();
        }
        const auto state = run_history(net, phis, inputs);
        const auto want = g(s);
        double p = 0.0;
        for (std::uint64_t k = 0; k < state.dim(); ++k) {
            std::uint64_t read = 0;
            for (auto q : outputs) {
                read = (read << 1) |
                       ((k & detail::qubit_mask(q, n)) ? std::uint64_t{1} : 0);
            }
            if (read == want) {
                p += std::norm(state[k]);
            }
        }
        report.entries.push_back({bits_of(s, g.m()), bits_of(want, g.n()), p,
                                  std::abs(p - 1.0) <= tol});
    }
    return report;
}

/// Uses the first layer as inputs and the last layer as outputs.
inline auto verify_truth_table(const NetworkSpec &net, const BooleanFunction &g,
                               double tol = 1e-10) -> TruthTableReport {
    const auto inputs = net.layer_neurons(0);
    const auto outputs = net.layer_neurons(net.layers().size() - 1);
    return verify_truth_table(net, g, inputs, outputs, tol);
}

namespace networks {

/// g(0)=01, g(1)=10: first layer to the two middle neurons.
inline auto splitter() -> BooleanFunction {
    return BooleanFunction::from_strings(1, {"01", "10"});
}

/// Exclusive or on two neurons.
inline auto xor_function() -> BooleanFunction {
    return BooleanFunction::from_strings(2, {"0", "1", "1", "0"});
}

/// h(00)=h(11)=h(01)=0, h(10)=1, used ahead of the Hadamard.
inline auto hadamard_variant_function() -> BooleanFunction {
    return BooleanFunction::from_strings(2, {"0", "0", "1", "0"});
}

/// The four one-input functions: 0, s, 1-s, 1.
inline auto unary_functions() -> std::vector<BooleanFunction> {
    return {BooleanFunction::from_strings(1, {"0", "0"}),
            BooleanFunction::from_strings(1, {"0", "1"}),
            BooleanFunction::from_strings(1, {"1", "0"}),
            BooleanFunction::from_strings(1, {"1", "1"})};
}

/// N1 -> N2 with the synaptic gate of g, input neuron 1.
inline auto two_neuron(const BooleanFunction &g) -> NetworkConfig {
    return {boolean_network_for(g), {1}};
}

/// N1 -> (N2, N3) -> N4 computing XOR of the middle layer.
inline auto xor_network() -> NetworkConfig {
    return {NetworkSpec{{1, 2, 1},
                        {SynapticStep::boolean(splitter(), {1}, {2, 3}),
                         SynapticStep::boolean(xor_function(), {2, 3}, {4})}},
            {1}};
}

/// XOR architecture with h replaced by U_H U_h on N4.
inline auto hadamard_variant_network() -> NetworkConfig {
    return {NetworkSpec{
                {1, 2, 1},
                {SynapticStep::boolean(splitter(), {1}, {2, 3}),
                 SynapticStep::boolean(hadamard_variant_function(), {2, 3}, {4}),
                 SynapticStep::post_unitary(fixed_gate(FixedGate::Hadamard), {4})}},
            {1}};
}

/// N1 -> N2 with |0><0| (x) U_H + |1><1| (x) U_H U_NOT.
inline auto complementarity_network() -> NetworkConfig {
    return {NetworkSpec{
                {1, 1},
                {SynapticStep::boolean(BooleanFunction::from_strings(1, {"0", "1"}),
                                       {1}, {2}),
                 SynapticStep::post_unitary(fixed_gate(FixedGate::Hadamard), {2})}},
            {1}};
}

} // namespace networks

} // namespace qann
