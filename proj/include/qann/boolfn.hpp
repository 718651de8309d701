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
 * Boolean functions {0,1}^m -> {0,1}^n and their synaptic gates.
 *
 * The synaptic gate of g is sum_s |s><s| (x) B_{g(s)}, where B_{g(s)} puts a
 * NOT on every output neuron whose bit of g(s) is 1. It is a permutation of
 * the basis: |s>|t> -> |s>|t xor g(s)>.
 */
#pragma once

#include <cctype>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qstate.hpp"

namespace qann {

/**
 * Truth table of g: {0,1}^m -> {0,1}^n.
 *
 * `table[s]` holds g(s) as an n-bit integer, with both the input index s
 * and the output read MSB-first (first symbol = most significant bit).
 */
class BooleanFunction {
  public:
    BooleanFunction(std::size_t m, std::size_t n,
                    std::vector<std::uint64_t> table)
        : m_{m}, n_{n}, table_{std::move(table)} {
        if (m_ < 1 || n_ < 1 || m_ + n_ > kHardMaxQubits) {
            throw ArgumentError("Boolean function arities out of range");
        }
        if (table_.size() != (std::size_t{1} << m_)) {
            throw ArgumentError("truth table must have 2^m entries");
        }
        for (auto out : table_) {
            if (out >> n_) {
                throw ArgumentError("truth table entry wider than n bits");
            }
        }
    }

    /// From 2^m output bit strings in ascending input order.
    static auto from_strings(std::size_t m,
                             const std::vector<std::string> &outputs)
        -> BooleanFunction {
        if (outputs.empty()) {
            throw ArgumentError("empty truth table");
        }
        const auto n = outputs.front().size();
        std::vector<std::uint64_t> table;
        for (const auto &o : outputs) {
            if (o.size() != n) {
                throw ArgumentError("output strings differ in length");
            }
            table.push_back(parse_bits(o));
        }
        return {m, n, std::move(table)};
    }

    [[nodiscard]] auto m() const -> std::size_t { return m_; }
    [[nodiscard]] auto n() const -> std::size_t { return n_; }
    [[nodiscard]] auto table() const -> std::span<const std::uint64_t> {
        return table_;
    }
    [[nodiscard]] auto operator()(std::uint64_t s) const -> std::uint64_t {
        return table_.at(s);
    }

    auto operator==(const BooleanFunction &) const -> bool = default;

    static auto parse_bits(std::string_view bits) -> std::uint64_t {
        std::uint64_t v = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw ArgumentError("bit string may only contain 0 and 1");
            }
            v = (v << 1) | static_cast<std::uint64_t>(c - '0');
        }
        return v;
    }

  private:
    std::size_t m_;
    std::size_t n_;
    std::vector<std::uint64_t> table_;
};

/// l-th (1-based) output symbol of g(s).
inline auto local_map(const BooleanFunction &g, std::size_t l,
                      std::string_view s) -> int {
    if (l < 1 || l > g.n()) {
        throw ArgumentError("output index out of range");
    }
    if (s.size() != g.m()) {
        throw ArgumentError("input string has wrong length");
    }
    const auto out = g(BooleanFunction::parse_bits(s));
    return static_cast<int>((out >> (g.n() - l)) & 1U);
}

/// Synaptic gate stored as control pattern -> target flip mask.
struct SynapticGate {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<std::uint64_t> flip_masks;

    auto operator==(const SynapticGate &) const -> bool = default;
};

inline auto compile_synaptic(const BooleanFunction &g) -> SynapticGate {
    return {g.m(), g.n(), {g.table().begin(), g.table().end()}};
}

/**
 * Applies the gate with controls/targets given as 1-based neuron lists
 * (first listed neuron = most significant bit of s, resp. of g(s)).
 */
inline auto apply_synaptic(const StateVector &state, const SynapticGate &gate,
                           std::span<const std::size_t> controls,
                           std::span<const std::size_t> targets)
    -> StateVector {
    const auto nq = state.n_qubits();
    if (controls.size() != gate.m || targets.size() != gate.n) {
        throw ArgumentError("control/target lists do not match gate arity");
    }
    std::vector<std::size_t> all(controls.begin(), controls.end());
    all.insert(all.end(), targets.begin(), targets.end());
    detail::check_distinct(all, nq);

    std::vector<std::uint64_t> control_masks;
    for (auto c : controls) {
        control_masks.push_back(detail::qubit_mask(c, nq));
    }
    // flip[mask] -> basis-index xor pattern for that target mask
    std::vector<std::uint64_t> flips;
    flips.reserve(gate.flip_masks.size());
    for (auto fm : gate.flip_masks) {
        std::uint64_t x = 0;
        for (std::size_t l = 0; l < gate.n; ++l) {
            if ((fm >> (gate.n - 1 - l)) & 1U) {
                x |= detail::qubit_mask(targets[l], nq);
            }
        }
        flips.push_back(x);
    }

    std::vector<Complex> out(state.dim());
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        std::uint64_t s = 0;
        for (auto cm : control_masks) {
            s = (s << 1) | ((k & cm) ? std::uint64_t{1} : 0);
        }
        out[k ^ flips[s]] = state[k];
    }
    return {nq, std::move(out)};
}

inline auto apply_synaptic(const StateVector &state, const SynapticGate &gate,
                           std::initializer_list<std::size_t> controls,
                           std::initializer_list<std::size_t> targets)
    -> StateVector {
    return apply_synaptic(
        state, gate, std::span<const std::size_t>(controls.begin(), controls.size()),
        std::span<const std::size_t>(targets.begin(), targets.size()));
}

/// Reads g(s) back from the gate's action on |s>|0...0>.
inline auto truth_table_of(const SynapticGate &gate) -> BooleanFunction {
    const auto nq = gate.m + gate.n;
    std::vector<std::size_t> controls;
    std::vector<std::size_t> targets;
    for (std::size_t q = 1; q <= nq; ++q) {
        (q <= gate.m ? controls : targets).push_back(q);
    }
    std::vector<std::uint64_t> table;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << gate.m); ++s) {
        std::vector<Complex> amps(std::size_t{1} << nq);
        amps[s << gate.n] = 1.0;
        const auto out = apply_synaptic(StateVector{nq, std::move(amps)}, gate,
                                        controls, targets);
        std::uint64_t hit = 0;
        for (std::uint64_t k = 0; k < out.dim(); ++k) {
            if (std::abs(out[k]) > 0.5) {
                hit = k;
            }
        }
        table.push_back(hit & ((std::uint64_t{1} << gate.n) - 1));
    }
    return {gate.m, gate.n, std::move(table)};
}

/// Dense 2^(m+n) matrix of the gate with controls leading.
inline auto dense_matrix(const SynapticGate &gate) -> Eigen::MatrixXcd {
    const auto dim = Eigen::Index{1} << (gate.m + gate.n);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const auto s = static_cast<std::uint64_t>(k) >> gate.n;
        u(static_cast<Eigen::Index>(static_cast<std::uint64_t>(k) ^
                                    gate.flip_masks[s]),
          k) = 1.0;
    }
    return u;
}

/**
 * Parses `input -> output` entries, one per line or separated by commas,
 * in ascending input order. `#` starts a comment. `first_line` offsets the
 * reported line numbers when the table is embedded in a larger file.
 */
inline auto parse_truth_table(std::string_view text, std::size_t first_line = 1)
    -> BooleanFunction {
    std::vector<std::string> outputs;
    std::size_t m = 0;
    std::size_t line_no = first_line;

    const auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
            s.remove_prefix(1);
        }
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
            s.remove_suffix(1);
        }
        return s;
    };
    const auto is_bits = [](std::string_view s) {
        return !s.empty() && s.find_first_not_of("01") == std::string_view::npos;
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        auto line = text.substr(pos, eol - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::size_t p = 0;
        while (p <= line.size()) {
            auto comma = line.find(',', p);
            if (comma == std::string_view::npos) {
                comma = line.size();
            }
            const auto entry = trim(line.substr(p, comma - p));
            p = comma + 1;
            if (entry.empty()) {
                continue;
            }
            const auto arrow = entry.find("->");
            if (arrow == std::string_view::npos) {
                throw ParseError("expected 'input -> output'", line_no);
            }
            const auto in = trim(entry.substr(0, arrow));
            const auto out = trim(entry.substr(arrow + 2));
            if (!is_bits(in) || !is_bits(out)) {
                throw ParseError("truth-table entries must be bit strings",
                                 line_no);
            }
            if (outputs.empty()) {
                m = in.size();
                if (m > kHardMaxQubits) {
                    throw ParseError("input arity too large", line_no);
                }
            } else if (in.size() != m) {
                throw ParseError("inconsistent input length", line_no);
            } else if (out.size() != outputs.front().size()) {
                throw ParseError("inconsistent output length", line_no);
            }
            if (BooleanFunction::parse_bits(in) != outputs.size()) {
                throw ParseError("inputs must be listed in ascending order "
                                 "without gaps",
                                 line_no);
            }
            outputs.emplace_back(out);
        }
        pos = eol + 1;
        ++line_no;
    }
    if (outputs.empty()) {
        throw ParseError("truth table has no entries");
    }
    if (outputs.size() != (std::size_t{1} << m)) {
        throw ParseError("truth table lists " + std::to_string(outputs.size()) +
                         " inputs, expected " +
                         std::to_string(std::size_t{1} << m));
    }
    try {
        return BooleanFunction::from_strings(m, outputs);
    } catch (const ArgumentError &e) {
        throw ParseError(e.what());
    }
}

} // namespace qann
