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
 * Text formats for network configurations and angle lists.
 *
 * Network file:
 *
 *     # two-neuron reinforcing connection
 *     layers = [1, 1]
 *     inputs = [1]
 *
 *     [step]
 *     kind = boolean
 *     controls = [1]
 *     targets = [2]
 *     table = 0 -> 0, 1 -> 1
 *
 *     [step]
 *     kind = post_unitary
 *     targets = [2]
 *     gate = hadamard
 *
 * A table may also be given as `table:` followed by one `in -> out` entry
 * per line. Neurons are numbered from 1. `inputs` defaults to the first
 * layer; `max_neurons` overrides the default network cap.
 */
#pragma once

#include <cctype>
#include <charconv>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolfn.hpp"
#include "gates.hpp"
#include "network.hpp"

namespace qann {

namespace detail {

inline auto trim(std::string_view s) -> std::string_view {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

inline auto lower(std::string_view s) -> std::string {
    std::string out(s);
    for (auto &c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

inline auto parse_index_list(std::string_view v, std::size_t line)
    -> std::vector<std::size_t> {
    v = trim(v);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
        throw ParseError("expected a bracketed list like [1, 2]", line);
    }
    v = v.substr(1, v.size() - 2);
    std::vector<std::size_t> out;
    if (trim(v).empty()) {
        return out;
    }
    std::size_t pos = 0;
    while (pos <= v.size()) {
        auto comma = v.find(',', pos);
        if (comma == std::string_view::npos) {
            comma = v.size();
        }
        const auto tok = trim(v.substr(pos, comma - pos));
        std::size_t x = 0;
        const auto *end = tok.data() + tok.size();
        const auto [ptr, ec] = std::from_chars(tok.data(), end, x);
        if (tok.empty() || ec != std::errc{} || ptr != end) {
            throw ParseError("bad integer '" + std::string(tok) + "'", line);
        }
        out.push_back(x);
        pos = comma + 1;
    }
    return out;
}

} // namespace detail

/// Decimal radians, optionally followed by `pi` (`0.5pi`, `pi`, `-2pi`).
inline auto parse_angle(std::string_view text) -> double {
    auto s = detail::trim(text);
    double scale = 1.0;
    if (s.size() >= 2 && detail::lower(s.substr(s.size() - 2)) == "pi") {
        scale = std::numbers::pi;
        s.remove_suffix(2);
        s = detail::trim(s);
        if (s.ends_with('*')) {
            s.remove_suffix(1);
        }
        if (s.empty() || s == "+") {
            return scale;
        }
        if (s == "-") {
            return -scale;
        }
    }
    if (s.starts_with('+')) {
        s.remove_prefix(1);
    }
    double x = 0.0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, x);
    if (s.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError("bad angle '" + std::string(text) + "'");
    }
    return x * scale;
}

/// Four comma-separated angles.
inline auto parse_phi(std::string_view text) -> GateParams {
    std::array<double, 4> a{};
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        if (count == 4) {
            throw ParseError("expected exactly four angles");
        }
        a[count++] = parse_angle(text.substr(pos, comma - pos));
        pos = comma + 1;
    }
    if (count != 4) {
        throw ParseError("expected exactly four angles");
    }
    return GateParams{a};
}

/// Comma-separated list of reals (times).
inline auto parse_real_list(std::string_view text) -> std::vector<double> {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        out.push_back(parse_angle(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

inline auto parse_gate_name(std::string_view name, std::size_t line = 0)
    -> Unitary2 {
    const auto n = detail::lower(detail::trim(name));
    if (n == "identity") {
        return fixed_gate(FixedGate::Identity);
    }
    if (n == "not") {
        return fixed_gate(FixedGate::Not);
    }
    if (n == "hadamard") {
        return fixed_gate(FixedGate::Hadamard);
    }
    throw ParseError("unknown gate '" + std::string(name) +
                         "' (identity | not | hadamard)",
                     line);
}

inline auto parse_network_config(std::string_view text) -> NetworkConfig {
    struct StepDraft {
        std::size_t line = 0;
        std::optional<std::string> kind;
        std::optional<std::vector<std::size_t>> controls;
        std::vector<std::size_t> targets;
        bool has_targets = false;
        std::optional<BooleanFunction> table;
        std::optional<Unitary2> gate;
    };

    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos <= text.size();) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        auto line = text.substr(pos, eol - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        lines.push_back(detail::trim(line));
        pos = eol + 1;
    }

    std::optional<std::vector<std::size_t>> layers;
    std::optional<std::vector<std::size_t>> inputs;
    std::size_t max_neurons = kDefaultMaxQubits;
    std::size_t layers_line = 0;
    std::size_t inputs_line = 0;
    std::vector<StepDraft> drafts;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = lines[i];
        const auto line_no = i + 1;
        if (line.empty()) {
            continue;
        }
        if (line == "[step]" || line == "step") {
            drafts.push_back({});
            drafts.back().line = line_no;
            continue;
        }
        auto sep = line.find_first_of("=:");
        if (sep == std::string_view::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        const auto key = detail::lower(detail::trim(line.substr(0, sep)));
        const auto value = detail::trim(line.substr(sep + 1));

        if (drafts.empty()) {
            if (key == "layers") {
                layers = detail::parse_index_list(value, line_no);
                layers_line = line_no;
            } else if (key == "inputs") {
                inputs = detail::parse_index_list(value, line_no);
                inputs_line = line_no;
            } else if (key == "max_neurons") {
                const auto v = detail::parse_index_list(
                    "[" + std::string(value) + "]", line_no);
                if (v.size() != 1) {
                    throw ParseError("max_neurons takes one integer", line_no);
                }
                max_neurons = v.front();
            } else {
                throw ParseError("unknown key '" + key + "'", line_no);
            }
            continue;
        }

        auto &d = drafts.back();
        if (key == "kind") {
            d.kind = detail::lower(value);
        } else if (key == "controls") {
            d.controls = detail::parse_index_list(value, line_no);
        } else if (key == "targets") {
            d.targets = detail::parse_index_list(value, line_no);
            d.has_targets = true;
        } else if (key == "gate") {
            d.gate = parse_gate_name(value, line_no);
        } else if (key == "table") {
            std::string body(value);
            const auto first = line_no;
            if (value.empty()) {
                // Block form: subsequent `in -> out` lines.
                std::size_t j = i + 1;
                while (j < lines.size() &&
                       (lines[j].empty() ||
                        lines[j].find("->") != std::string_view::npos)) {
                    body += std::string(lines[j]) + "\n";
                    ++j;
                }
                i = j - 1;
                d.table = parse_truth_table(body, first + 1);
            } else {
                d.table = parse_truth_table(body, first);
            }
        } else {
            throw ParseError("unknown step key '" + key + "'", line_no);
        }
    }

    if (!layers) {
        throw ParseError("missing 'layers = [...]'");
    }
    std::size_t total = 0;
    for (auto l : *layers) {
        total += l;
    }
    const auto check_neurons = [&](const std::vector<std::size_t> &ids,
                                   std::size_t line_no) {
        for (auto q : ids) {
            if (q < 1 || q > total) {
                throw ParseError("unknown neuron " + std::to_string(q) +
                                     " (network has " + std::to_string(total) +
                                     ")",
                                 line_no);
            }
        }
    };

    std::vector<SynapticStep> steps;
    for (const auto &d : drafts) {
        if (!d.kind) {
            throw ParseError("step is missing 'kind'", d.line);
        }
        if (!d.has_targets) {
            throw ParseError("step is missing 'targets'", d.line);
        }
        check_neurons(d.targets, d.line);
        if (*d.kind == "boolean") {
            if (!d.controls) {
                throw ParseError("boolean step is missing 'controls'", d.line);
            }
            if (!d.table) {
                throw ParseError("boolean step is missing 'table'", d.line);
            }
            if (d.gate) {
                throw ParseError("boolean step takes a table, not a gate", d.line);
            }
            check_neurons(*d.controls, d.line);
            if (d.table->m() != d.controls->size() ||
                d.table->n() != d.targets.size()) {
                throw ParseError("truth table is " + std::to_string(d.table->m()) +
                                     "->" + std::to_string(d.table->n()) +
                                     " but step has " +
                                     std::to_string(d.controls->size()) +
                                     " controls and " +
                                     std::to_string(d.targets.size()) + " targets",
                                 d.line);
            }
            steps.push_back(SynapticStep::boolean(*d.table, *d.controls, d.targets));
        } else if (*d.kind == "post_unitary") {
            if (!d.gate) {
                throw ParseError("post_unitary step is missing 'gate'", d.line);
            }
            if (d.table || (d.controls && !d.controls->empty())) {
                throw ParseError("post_unitary step takes only targets and gate",
                                 d.line);
            }
            steps.push_back(SynapticStep::post_unitary(*d.gate, d.targets));
        } else {
            throw ParseError("unknown step kind '" + *d.kind +
                                 "' (boolean | post_unitary)",
                             d.line);
        }
    }

    try {
        NetworkSpec net{*layers, std::move(steps), max_neurons};
        std::vector<std::size_t> in = inputs ? *inputs : net.layer_neurons(0);
        check_neurons(in, inputs_line);
        detail::check_distinct(in, net.n_neurons());
        return {std::move(net), std::move(in)};
    } catch (const ConfigurationError &e) {
        throw ParseError(e.what(), layers_line);
    } catch (const ArgumentError &e) {
        throw ParseError(std::string("inputs: ") + e.what(), inputs_line);
    }
}

} // namespace qann
